#include "torus/serialize.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace torus::serialize {

namespace {

[[noreturn]] void bad_field(const std::string& field, const std::string& why) {
    throw std::invalid_argument("config field '" + field + "': " + why);
}

std::int64_t int_from(const json& j, const std::string& field) {
    if (!j.is_number_integer()) bad_field(field, "expected an integer");
    return j.get<std::int64_t>();
}

}  // namespace

std::string real_str(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double real_from_json(const json& j, const std::string& field) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        try {
            std::size_t used = 0;
            const double v = std::stod(s, &used);
            if (used != s.size()) bad_field(field, "trailing characters in numeric string");
            return v;
        } catch (const std::invalid_argument&) {
            bad_field(field, "unparsable numeric string");
        } catch (const std::out_of_range&) {
            bad_field(field, "numeric string out of double range");
        }
    }
    bad_field(field, "expected a number or a decimal string");
}

json rat_to_json(const geom::Rat& r) {
    const geom::BigInt num = numerator(r);
    const geom::BigInt den = denominator(r);
    if (num > std::numeric_limits<std::int64_t>::max() ||
        num < std::numeric_limits<std::int64_t>::min() ||
        den > std::numeric_limits<std::int64_t>::max())
        throw std::invalid_argument("rat_to_json: rational exceeds 64-bit range");
    return json::array({static_cast<std::int64_t>(num), static_cast<std::int64_t>(den)});
}

geom::Rat rat_from_json(const json& j, const std::string& field) {
    if (!j.is_array() || j.size() != 2) bad_field(field, "expected [numerator, denominator]");
    const std::int64_t num = int_from(j[0], field);
    const std::int64_t den = int_from(j[1], field);
    if (den == 0) bad_field(field, "zero denominator");
    return geom::Rat(num, den);
}

json vec2q_to_json(const geom::Vec2Q& v) {
    return json::array({rat_to_json(v.x), rat_to_json(v.y)});
}

geom::Vec2Q vec2q_from_json(const json& j, const std::string& field) {
    if (!j.is_array() || j.size() != 2) bad_field(field, "expected a pair of rationals");
    return {rat_from_json(j[0], field), rat_from_json(j[1], field)};
}

json word_to_json(const dynamics::LiftWord& w) {
    json arr = json::array();
    for (const dynamics::Generator& g : w.word) {
        json item;
        if (const auto* t = std::get_if<dynamics::Translation>(&g)) {
            item["type"] = "translation";
            item["theta"] = json::array({real_str(t->theta.x), real_str(t->theta.y)});
        } else if (const auto* l = std::get_if<dynamics::Linear>(&g)) {
            item["type"] = "linear";
            item["matrix"] = json::array({l->m.a, l->m.b, l->m.c, l->m.d});
        } else {
            const auto& s = std::get<dynamics::Shear>(g);
            item["type"] = "shear";
            item["eta"] = real_str(s.eta);
            item["xi"] = s.xi;
        }
        arr.push_back(std::move(item));
    }
    return arr;
}

dynamics::LiftWord word_from_json(const json& j, const std::string& field) {
    if (!j.is_array()) bad_field(field, "expected an array of generators");
    std::vector<dynamics::Generator> gens;
    for (const json& item : j) {
        if (!item.is_object() || !item.contains("type")) bad_field(field, "generator needs a type");
        const std::string type = item["type"].get<std::string>();
        if (type == "translation") {
            if (!item.contains("theta") || !item["theta"].is_array() || item["theta"].size() != 2)
                bad_field(field, "translation needs theta = [x, y]");
            gens.push_back(dynamics::Translation{{real_from_json(item["theta"][0], field),
                                                  real_from_json(item["theta"][1], field)}});
        } else if (type == "linear") {
            if (!item.contains("matrix") || !item["matrix"].is_array() || item["matrix"].size() != 4)
                bad_field(field, "linear needs matrix = [a, b, c, d]");
            geom::Mat2Z m{int_from(item["matrix"][0], field), int_from(item["matrix"][1], field),
                          int_from(item["matrix"][2], field), int_from(item["matrix"][3], field)};
            gens.push_back(dynamics::Linear{m});
        } else if (type == "shear") {
            if (!item.contains("eta") || !item.contains("xi"))
                bad_field(field, "shear needs eta and xi");
            gens.push_back(dynamics::Shear{real_from_json(item["eta"], field),
                                           static_cast<int>(int_from(item["xi"], field))});
        } else {
            bad_field(field, "unknown generator type '" + type + "'");
        }
    }
    return dynamics::make_word(std::move(gens));
}

void write_cloud_file(const std::filesystem::path& path, const geom::PointCloud& cloud) {
    std::string bytes;
    bytes.reserve(16 + cloud.size() * 16);
    bytes.append(kCloudMagic, sizeof(kCloudMagic));
    const std::uint64_t count = cloud.size();
    bytes.append(reinterpret_cast<const char*>(&count), 8);
    for (const geom::Vec2& p : cloud.pts) {
        bytes.append(reinterpret_cast<const char*>(&p.x), 8);
        bytes.append(reinterpret_cast<const char*>(&p.y), 8);
    }
    atomic_write(path, bytes);
}

geom::PointCloud read_cloud_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_cloud_file: cannot open " + path.string());
    char magic[8];
    in.read(magic, 8);
    if (!in || std::memcmp(magic, kCloudMagic, 8) != 0)
        throw std::runtime_error("read_cloud_file: bad magic in " + path.string());
    std::uint64_t count = 0;
    in.read(reinterpret_cast<char*>(&count), 8);
    std::vector<geom::Vec2> pts(count);
    in.read(reinterpret_cast<char*>(pts.data()), static_cast<std::streamsize>(count * 16));
    if (!in) throw std::runtime_error("read_cloud_file: truncated file " + path.string());
    return geom::PointCloud(std::move(pts), 0.0);
}

std::string fnv1a_hex(const void* data, std::size_t size) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::size_t i = 0; i < size; ++i) {
        h ^= bytes[i];
        h *= 0x100000001b3ULL;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string file_hash(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("file_hash: cannot open " + path.string());
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return fnv1a_hex(content.data(), content.size());
}

void atomic_write(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("atomic_write: cannot open " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw std::runtime_error("atomic_write: short write to " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace torus::serialize
