#include "lgdeg/io.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>

#include "lgdeg/errors.hpp"

namespace lgdeg {

namespace {

Integer parse_integer(const nlohmann::json& j) {
    if (j.is_number_integer()) return Integer(std::to_string(j.get<std::int64_t>()));
    if (j.is_number_unsigned()) return Integer(std::to_string(j.get<std::uint64_t>()));
    if (j.is_string()) {
        const auto& s = j.get_ref<const std::string&>();
        Integer x;
        if (s.empty() || x.set_str(s, 10) != 0) throw ParseError("not an integer: " + s);
        return x;
    }
    throw ParseError("expected an integer, got " + j.dump());
}

}  // namespace

ConfigInput parse_configuration(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(e.what());
    }
    if (!j.is_object() || !j.contains("points") || !j["points"].is_array())
        throw ParseError("input needs a \"points\" array");
    std::vector<LatticePoint> points;
    for (const auto& p : j["points"]) {
        if (!p.is_array()) throw ParseError("each point must be an array");
        LatticePoint pt;
        for (const auto& x : p) pt.push_back(parse_integer(x));
        points.push_back(std::move(pt));
    }
    if (j.contains("dim")) {
        if (!j["dim"].is_number_integer()) throw ParseError("\"dim\" must be an integer");
        auto d = j["dim"].get<std::int64_t>();
        for (const auto& p : points)
            if (static_cast<std::int64_t>(p.size()) != d) throw ParseError("point length differs from \"dim\"");
    }
    if (j.contains("marks")) {
        if (!j["marks"].is_array()) throw ParseError("\"marks\" must be an array");
        std::vector<LatticePoint> marked;
        for (const auto& m : j["marks"]) {
            if (!m.is_number_integer() || m.get<std::int64_t>() < 0 ||
                m.get<std::uint64_t>() >= points.size())
                throw ParseError("mark index out of range: " + m.dump());
            marked.push_back(points[m.get<std::size_t>()]);
        }
        points = std::move(marked);
    }
    return ConfigInput{PointConfiguration(std::move(points)), text};
}

ConfigInput load_configuration(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_configuration(ss.str());
}

std::string fnv1a_hex(const std::string& data) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i, h >>= 4) out[i] = digits[h & 15];
    return out;
}

nlohmann::json to_json(const Integer& x) {
    static const Integer limit("9007199254740992");
    if (abs(x) > limit) return x.get_str();
    return std::stoll(x.get_str());
}

nlohmann::json to_json(const IntVector& v) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& x : v) out.push_back(to_json(x));
    return out;
}

nlohmann::json to_json(const IndexSet& s) {
    nlohmann::json out = nlohmann::json::array();
    for (auto i : s) out.push_back(i);
    return out;
}

nlohmann::json to_json(const Rational& x) {
    if (x.get_den() == 1) return to_json(Integer(x.get_num()));
    return x.get_str();
}

nlohmann::json to_json(const RatVector& v) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& x : v) out.push_back(to_json(x));
    return out;
}

void write_atomically(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write " + tmp.string());
        out << content;
        if (!out.flush()) throw Error("cannot write " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace lgdeg
