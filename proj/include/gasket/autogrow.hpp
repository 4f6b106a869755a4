#pragma once

#include "gasket/errors.hpp"

#include <string>
#include <utility>

namespace gasket {

// Calls attempt(L) for L = first, first+1, ... while it throws DomainContact,
// giving up after first + extra. Returns the result and the L that succeeded.
template <class F>
auto with_auto_grow(int first, int extra, F&& attempt) -> std::pair<decltype(attempt(first)), int> {
    for (int L = first;; ++L) {
        try {
            return {attempt(L), L};
        } catch (const DomainContact& e) {
            if (L >= first + extra)
                throw DomainContact(std::string(e.what()) + " (domain grown to L=" + std::to_string(L) + ")");
        }
    }
}

}  // namespace gasket
