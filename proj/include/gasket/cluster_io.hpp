#pragma once

#include "gasket/gasket_level.hpp"
#include "gasket/harmonic.hpp"

#include <string>
#include <vector>

namespace gasket {

// Rows `half,a,b` under the header `# level=n domain_L=L`; further `#` lines carry
// provenance and are ignored by the loader.
struct ClusterFile {
    int level = 0;
    int domain_L = 0;
    std::vector<Vertex> vertices;
};

std::string cluster_csv(const GasketLevel& ctx, const std::vector<char>& members,
                        const std::vector<std::string>& provenance = {});
// Throws ConfigError on malformed input.
ClusterFile parse_cluster_csv(const std::string& text);
ClusterFile load_cluster_csv(const std::string& path);
// Flags per vertex of ctx; throws ConfigError if the file is for another level or
// names a non-member.
std::vector<char> to_members(const ClusterFile& file, const GasketLevel& ctx);

// Rows `half,a,b,value` for every vertex, values in shortest round-trip form.
struct FieldFile {
    int level = 0;
    int domain_L = 0;
    std::vector<Vertex> vertices;
    std::vector<double> values;
};

std::string field_csv(const GasketLevel& ctx, const Field& values, const std::vector<std::string>& provenance = {});
FieldFile parse_field_csv(const std::string& text);

std::string format_double(double v);  // shortest string that parses back to v
std::string read_text(const std::string& path);  // throws ConfigError naming the path
void write_text(const std::string& path, const std::string& content);  // throws ModelError

}  // namespace gasket
