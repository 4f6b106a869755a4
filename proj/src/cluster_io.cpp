#include "gasket/cluster_io.hpp"

#include "gasket/errors.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace gasket {

namespace {

std::string header(const GasketLevel& ctx, const std::vector<std::string>& provenance) {
    std::string h = "# level=" + std::to_string(ctx.level()) + " domain_L=" + std::to_string(ctx.domain_L()) + "\n";
    for (const std::string& p : provenance) h += "# " + p + "\n";
    return h;
}

std::string vertex_row(const Vertex& v) {
    return std::string(v.half == Half::Plus ? "+" : "-") + "," + std::to_string(v.a) + "," + std::to_string(v.b);
}

template <class T>
T parse_number(const std::string& s, const std::string& what) {
    T value{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size()) throw ConfigError("bad " + what + " '" + s + "'");
    return value;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(item);
    return out;
}

// Reads the header and hands every data row to `row`.
template <class F>
void parse_rows(const std::string& text, int& level, int& domain_L, std::size_t columns, F&& row) {
    std::istringstream in(text);
    std::string line;
    bool have_header = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (!have_header) {
                if (std::sscanf(line.c_str(), "# level=%d domain_L=%d", &level, &domain_L) != 2)
                    throw ConfigError("missing '# level=n domain_L=L' header");
                have_header = true;
            }
            continue;
        }
        if (!have_header) throw ConfigError("missing '# level=n domain_L=L' header");
        const auto cells = split(line);
        if (cells.size() != columns || (cells[0] != "+" && cells[0] != "-"))
            throw ConfigError("malformed row '" + line + "'");
        const Vertex v{cells[0] == "+" ? Half::Plus : Half::Minus, parse_number<std::int64_t>(cells[1], "coordinate"),
                       parse_number<std::int64_t>(cells[2], "coordinate")};
        row(v, cells);
    }
    if (!have_header) throw ConfigError("missing '# level=n domain_L=L' header");
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::string cluster_csv(const GasketLevel& ctx, const std::vector<char>& members,
                        const std::vector<std::string>& provenance) {
    std::string out = header(ctx, provenance);
    for (std::size_t x = 0; x < ctx.size(); ++x)
        if (members[x]) out += vertex_row(ctx.vertex(x)) + "\n";
    return out;
}

ClusterFile parse_cluster_csv(const std::string& text) {
    ClusterFile f;
    parse_rows(text, f.level, f.domain_L, 3, [&](const Vertex& v, const auto&) { f.vertices.push_back(v); });
    return f;
}

ClusterFile load_cluster_csv(const std::string& path) { return parse_cluster_csv(read_text(path)); }

std::vector<char> to_members(const ClusterFile& file, const GasketLevel& ctx) {
    if (file.level != ctx.level() || file.domain_L != ctx.domain_L())
        throw ConfigError("cluster file is for level " + std::to_string(file.level) + ", domain_L " +
                          std::to_string(file.domain_L));
    std::vector<char> m(ctx.size(), 0);
    for (const Vertex& v : file.vertices) {
        const auto i = ctx.find(canonical(v));
        if (!i) throw ConfigError("vertex " + to_string(v) + " is not in the gasket");
        m[*i] = 1;
    }
    return m;
}

std::string field_csv(const GasketLevel& ctx, const Field& values, const std::vector<std::string>& provenance) {
    std::string out = header(ctx, provenance);
    for (std::size_t x = 0; x < ctx.size(); ++x) out += vertex_row(ctx.vertex(x)) + "," + format_double(values[x]) + "\n";
    return out;
}

FieldFile parse_field_csv(const std::string& text) {
    FieldFile f;
    parse_rows(text, f.level, f.domain_L, 4, [&](const Vertex& v, const std::vector<std::string>& cells) {
        f.vertices.push_back(v);
        f.values.push_back(parse_number<double>(cells[3], "value"));
    });
    return f;
}

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
    if (!out) throw ModelError("cannot write " + path);
}

}  // namespace gasket
