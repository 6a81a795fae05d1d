#include "tfr/manifest.hpp"

#include "tfr/error.hpp"
#include "tfr/text.hpp"

#include <fstream>

namespace tfr::manifest {

std::vector<Row> read_manifest(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::Io, "cannot read manifest " + path.string());
    const std::filesystem::path base = path.parent_path();
    std::string line;
    if (!std::getline(in, line) || text::trim(line) != kHeader)
        fail(ErrorKind::InvalidArgument, path.string() + ": header must be '" + std::string(kHeader) + "'");
    std::vector<Row> rows;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (text::trim(line).empty()) continue;
        const std::string where = path.string() + ":" + std::to_string(lineno);
        const auto f = text::split(text::trim(line), ',');
        if (f.size() != 7) fail(ErrorKind::InvalidArgument, where + ": expected 7 fields");
        Row r;
        r.image = base / std::string(text::trim(f[0]));
        const std::string lm(text::trim(f[1]));
        if (lm != "-") r.landmarks = base / lm;
        r.identity = std::string(text::trim(f[2]));
        if (r.identity.empty()) fail(ErrorKind::InvalidArgument, where + ": empty identity");
        r.session = static_cast<int>(text::parse_int(f[3], where + " session"));
        r.yaw = text::parse_double(f[4], where + " yaw");
        if (!(r.yaw >= -90.0 && r.yaw <= 90.0)) fail(ErrorKind::InvalidArgument, where + ": yaw outside [-90, 90]");
        r.hair = text::parse_bool(f[5], where + " hair");
        r.glasses = text::parse_bool(f[6], where + " glasses");
        if (!std::filesystem::exists(r.image)) fail(ErrorKind::Io, where + ": missing image " + r.image.string());
        if (!r.landmarks.empty() && !std::filesystem::exists(r.landmarks))
            fail(ErrorKind::Io, where + ": missing landmarks " + r.landmarks.string());
        rows.push_back(std::move(r));
    }
    return rows;
}

std::string format_manifest(const std::vector<Row>& rows, const std::filesystem::path& base) {
    auto rel = [&](const std::filesystem::path& p) {
        const auto r = p.lexically_relative(base);
        return (r.empty() || *r.begin() == "..") ? p.generic_string() : r.generic_string();
    };
    std::string out = std::string(kHeader) + "\n";
    for (const Row& r : rows) {
        out += rel(r.image) + "," + (r.landmarks.empty() ? std::string("-") : rel(r.landmarks)) + "," + r.identity +
               "," + std::to_string(r.session) + "," + text::format_double(r.yaw) + "," + (r.hair ? "1" : "0") + "," +
               (r.glasses ? "1" : "0") + "\n";
    }
    return out;
}

}  // namespace tfr::manifest
