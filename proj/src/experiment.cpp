#include "torus/experiment.hpp"

#include "torus/rotation.hpp"
#include "torus/svg.hpp"

#include <chrono>
#include <cmath>
#include <fstream>

namespace torus::experiment {

namespace {

using serialize::real_str;

[[noreturn]] void bad_field(const std::string& field, const std::string& why) {
    throw std::invalid_argument("config field '" + field + "': " + why);
}

Command command_from(const std::string& s) {
    if (s == "build") return Command::build;
    if (s == "verify") return Command::verify;
    if (s == "rotate") return Command::rotate;
    if (s == "probe") return Command::probe;
    if (s == "render") return Command::render;
    bad_field("command", "unknown command '" + s + "'");
}

double wall_ms(const std::chrono::steady_clock::time_point& from) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - from)
        .count();
}

std::string verdict_str(spreader::Verdict::Status s) {
    switch (s) {
        case spreader::Verdict::Status::pass: return "pass";
        case spreader::Verdict::Status::inconclusive: return "inconclusive";
        default: return "violated";
    }
}

json verdicts_to_json(const std::vector<spreader::Verdict>& verdicts) {
    json arr = json::array();
    for (const auto& v : verdicts) {
        arr.push_back({{"name", v.name},
                       {"value", real_str(v.value)},
                       {"bound", real_str(v.bound)},
                       {"slack", real_str(v.slack)},
                       {"verdict", verdict_str(v.status)}});
    }
    return arr;
}

json polygon_to_json(const geom::ConvexPolygon& poly) {
    json verts = json::array();
    for (const geom::Vec2& p : poly.vertices)
        verts.push_back(json::array({real_str(p.x), real_str(p.y)}));
    return {{"vertices", verts}, {"degenerate", poly.degenerate}};
}

geom::ConvexPolygon polygon_from_json(const json& j) {
    geom::ConvexPolygon poly;
    for (const json& v : j.at("vertices"))
        poly.vertices.push_back({serialize::real_from_json(v[0], "vertices"),
                                 serialize::real_from_json(v[1], "vertices")});
    poly.degenerate = j.value("degenerate", false);
    return poly;
}

json recipe_to_json(const spreader::SpreaderRecipe& recipe) {
    const auto& p = recipe.params;
    json stages = json::array();
    for (const auto& s : p.stages) {
        stages.push_back({{"index", s.index},
                          {"A", json::array({s.a_mat.a, s.a_mat.b, s.a_mat.c, s.a_mat.d})},
                          {"eta", serialize::rat_to_json(s.eta)},
                          {"v", serialize::vec2q_to_json(s.v)}});
    }
    json gens = json::array();
    for (const auto& g : p.generators) gens.push_back(serialize::vec2q_to_json(g));
    return {{"l", p.generators.size()},
            {"scale_k", p.scale_k},
            {"generators", gens},
            {"stages", stages},
            {"lambda", real_str(p.lambda)},
            {"eps_prime", real_str(p.eps_prime)},
            {"delta", real_str(p.delta)},
            {"delta_prime", real_str(p.delta_prime)},
            {"xi0", p.xi0},
            {"xi", recipe.xi},
            {"r", real_str(recipe.r)},
            {"vertical_last", recipe.vertical_last},
            {"delta_convention_differs", p.delta_convention_differs},
            {"admissible_a", "1/(2*xi) + (1/xi)*Z"},
            {"f_word", serialize::word_to_json(recipe.f_word)}};
}

json witness_to_json(const homothety::LargeApproxResult& res) {
    const char* status = res.status == homothety::LargeApproxStatus::ok
                             ? "ok"
                             : (res.status == homothety::LargeApproxStatus::too_small
                                    ? "too_small"
                                    : "shape_mismatch");
    return {{"status", status},
            {"r", real_str(res.witness.r)},
            {"scale", real_str(res.witness.scale)},
            {"translation",
             json::array({real_str(res.witness.translation.x), real_str(res.witness.translation.y)})},
            {"achieved_gap", real_str(res.witness.achieved_gap)},
            {"sampling_slack", real_str(res.witness.sampling_slack)}};
}

int status_from_verdicts(const std::vector<spreader::Verdict>& verdicts) {
    bool inconclusive = false;
    for (const auto& v : verdicts) {
        if (v.status == spreader::Verdict::Status::violated) return 2;
        if (v.status == spreader::Verdict::Status::inconclusive) inconclusive = true;
    }
    return inconclusive ? 3 : 0;
}

}  // namespace

ExperimentConfig parse_config(const json& j) {
    if (!j.is_object()) throw std::invalid_argument("config: expected a JSON object");
    ExperimentConfig cfg;
    cfg.echo = j;
    if (!j.contains("command")) bad_field("command", "missing");
    cfg.command = command_from(j["command"].get<std::string>());
    cfg.seed = j.value("seed", 0ULL);
    if (j.contains("output_dir")) cfg.output_dir = j["output_dir"].get<std::string>();

    if (j.contains("generators")) {
        if (!j["generators"].is_array() || j["generators"].empty())
            bad_field("generators", "expected a non-empty array of rational pairs");
        for (const json& g : j["generators"])
            cfg.generators.push_back(serialize::vec2q_from_json(g, "generators"));
    }
    if (j.contains("r")) {
        cfg.r = serialize::real_from_json(j["r"], "r");
        if (!(cfg.r > 0)) bad_field("r", "must be positive");
    }
    if (j.contains("xi_override")) {
        cfg.xi_override = j["xi_override"].get<int>();
        if (cfg.xi_override < 0) bad_field("xi_override", "must be >= 0");
    }
    if (j.contains("a")) {
        if (j["a"].is_array()) cfg.a = serialize::rat_from_json(j["a"], "a");
        else cfg.a = geom::Rat(serialize::real_from_json(j["a"], "a"));
    }
    if (j.contains("b")) cfg.b = serialize::real_from_json(j["b"], "b");
    if (j.contains("resolution")) {
        cfg.resolution = j["resolution"].get<int>();
        if (cfg.resolution < 1) bad_field("resolution", "must be >= 1");
    }
    if (j.contains("basepoint")) {
        const json& bp = j["basepoint"];
        if (!bp.is_array() || bp.size() != 2) bad_field("basepoint", "expected [x, y]");
        cfg.basepoint = {serialize::real_from_json(bp[0], "basepoint"),
                         serialize::real_from_json(bp[1], "basepoint")};
    }
    if (j.contains("map")) {
        const json& m = j["map"];
        if (!m.is_object() || !m.contains("word")) bad_field("map", "expected {word, q?}");
        cfg.map_word = serialize::word_from_json(m["word"], "map.word");
        cfg.map_q = m.value("q", 1);
        if (cfg.map_q < 1) bad_field("map.q", "must be >= 1");
    }
    cfg.mode = j.value("mode", std::string("classic"));
    if (cfg.mode != "classic" && cfg.mode != "generalized")
        bad_field("mode", "expected 'classic' or 'generalized'");
    if (j.contains("n")) {
        cfg.n = j["n"].get<long>();
        if (cfg.n < 1) bad_field("n", "must be >= 1");
    }
    if (j.contains("subsequence")) {
        for (const json& t : j["subsequence"]) cfg.subsequence.push_back(t.get<long>());
    }
    if (j.contains("epsilon")) {
        cfg.epsilon = serialize::real_from_json(j["epsilon"], "epsilon");
        if (!(cfg.epsilon > 0)) bad_field("epsilon", "must be positive");
    }
    if (j.contains("radius")) {
        cfg.radius = serialize::real_from_json(j["radius"], "radius");
        if (!(cfg.radius > 0)) bad_field("radius", "must be positive");
    }
    if (j.contains("max_n")) {
        cfg.max_n = j["max_n"].get<long>();
        if (cfg.max_n < 1) bad_field("max_n", "must be >= 1");
    }
    if (j.contains("u_center")) {
        const json& c = j["u_center"];
        if (!c.is_array() || c.size() != 2) bad_field("u_center", "expected [x, y]");
        cfg.u_center = {serialize::real_from_json(c[0], "u_center"),
                        serialize::real_from_json(c[1], "u_center")};
    }
    if (j.contains("u_radius")) {
        cfg.u_radius = serialize::real_from_json(j["u_radius"], "u_radius");
        if (!(cfg.u_radius > 0)) bad_field("u_radius", "must be positive");
    }
    if (j.contains("u_samples")) {
        cfg.u_samples = j["u_samples"].get<int>();
        if (cfg.u_samples < 2) bad_field("u_samples", "must be >= 2");
    }
    if (j.contains("record")) cfg.record_path = j["record"].get<std::string>();

    // command-specific requirements
    switch (cfg.command) {
        case Command::build:
        case Command::verify:
            if (cfg.generators.empty()) bad_field("generators", "required for this command");
            break;
        case Command::rotate:
        case Command::probe:
            if (!cfg.map_word) bad_field("map", "required for this command");
            break;
        case Command::render:
            if (cfg.record_path.empty()) bad_field("record", "required for render");
            break;
    }
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config " + path.string());
    json j;
    in >> j;
    return parse_config(j);
}

std::filesystem::path record_file(const ExperimentConfig& config) {
    return config.output_dir / "record.json";
}

namespace {

dynamics::MapFn config_map(const ExperimentConfig& cfg) {
    if (cfg.map_q > 1) return dynamics::as_fn(dynamics::cq_conjugate(*cfg.map_word, cfg.map_q));
    return dynamics::as_fn(*cfg.map_word);
}

json run_build(const ExperimentConfig& cfg, int& status) {
    const auto recipe = spreader::build_spreader(cfg.generators, cfg.r, cfg.xi_override);
    status = 0;
    return {{"recipe", recipe_to_json(recipe)}};
}

json run_verify(const ExperimentConfig& cfg, int& status) {
    const auto recipe = spreader::build_spreader(cfg.generators, cfg.r, cfg.xi_override);
    const double a = static_cast<double>(cfg.a);
    if (!recipe.is_admissible(a))
        bad_field("a", "not in the admissible set 1/(2*xi) + (1/xi)*Z for xi = " +
                           std::to_string(recipe.xi));
    const auto dom = dynamics::make_domain(cfg.resolution, cfg.basepoint);
    const auto trace = spreader::verify_stages(recipe, a, cfg.b, dom);

    json stages = json::array();
    for (const auto& row : trace.rows) {
        json item = {{"k_index", row.k_index},
                     {"d_to_k", real_str(row.d_to_k)},
                     {"k_to_d", real_str(row.k_to_d)},
                     {"cloud_hint", real_str(row.cloud_hint)},
                     {"k_sample_step", real_str(row.k_sample_step)},
                     {"k_polygon", polygon_to_json(row.k_poly)}};
        if (!cfg.output_dir.empty()) {
            const std::string name = "cloud_k" + std::to_string(row.k_index) + ".tcloud";
            const auto path = cfg.output_dir / name;
            serialize::write_cloud_file(path, row.cloud);
            item["cloud_file"] = name;
            item["cloud_hash"] = serialize::file_hash(path);
        }
        stages.push_back(std::move(item));
    }

    json out = {{"recipe", recipe_to_json(recipe)},
                {"verdicts", verdicts_to_json(trace.verdicts)},
                {"stages", stages},
                {"final_hausdorff", real_str(trace.final_hausdorff)},
                {"final_slack", real_str(trace.final_slack)},
                {"final_diameter", real_str(trace.final_diameter)},
                {"witness", witness_to_json(trace.witness)},
                {"merged_vertical", trace.merged_vertical}};
    if (!cfg.output_dir.empty()) {
        const auto svg_path = cfg.output_dir / "trace.svg";
        svg::render_trace(trace, svg_path);
        out["artifacts"] = {{"trace_svg", "trace.svg"}};
    }
    status = status_from_verdicts(trace.verdicts);
    return out;
}

json run_rotate(const ExperimentConfig& cfg, int& status) {
    const auto dom = dynamics::make_domain(cfg.resolution, cfg.basepoint);
    const auto map = config_map(cfg);
    json out;
    if (cfg.mode == "classic") {
        const auto est = rotation::rotation_set_estimate(map, cfg.n, dom);
        out["estimate"] = {{"n", est.n},
                           {"diameter", real_str(est.diameter)},
                           {"hull", polygon_to_json(est.hull)}};
        if (!cfg.output_dir.empty()) {
            svg::render_hull_series(std::vector<rotation::RotationEstimate>{est},
                                    cfg.output_dir / "hulls.svg");
            out["artifacts"] = {{"hulls_svg", "hulls.svg"}};
        }
    } else {
        if (cfg.subsequence.empty()) bad_field("subsequence", "required for generalized mode");
        const auto est = rotation::generalized_rot_estimate(map, cfg.subsequence, dom);
        json diams = json::array();
        for (double d : est.diam_trace) diams.push_back(real_str(d));
        json hulls = json::array();
        for (const auto& cloud : est.normalized)
            hulls.push_back(polygon_to_json(geom::convex_hull(cloud.pts)));
        out["estimate"] = {{"subsequence", est.subsequence},
                           {"diam_trace", diams},
                           {"cauchy_gap", real_str(est.cauchy_gap)},
                           {"hulls", hulls}};
        if (!cfg.output_dir.empty()) {
            std::optional<geom::ConvexPolygon> target;
            if (!cfg.generators.empty()) {
                auto zon = geom::minkowski_zonogon(cfg.generators);
                const double d = geom::polygon_diameter(zon);
                const geom::Vec2 c = geom::polygon_centroid_vertices(zon);
                for (auto& v : zon.vertices) v = (v - c) * (1.0 / d);
                target = zon;
            }
            svg::render_hull_series(est, cfg.output_dir / "hulls.svg", target);
            out["artifacts"] = {{"hulls_svg", "hulls.svg"}};
        }
    }
    status = 0;
    return out;
}

json run_probe(const ExperimentConfig& cfg, int& status) {
    const auto map = config_map(cfg);
    // dense disk sampling for U
    std::vector<geom::Vec2> pts;
    const int m = cfg.u_samples;
    for (int iy = -m; iy <= m; ++iy)
        for (int ix = -m; ix <= m; ++ix) {
            const geom::Vec2 off{cfg.u_radius * ix / m, cfg.u_radius * iy / m};
            if (off.norm_sq() <= cfg.u_radius * cfg.u_radius) pts.push_back(cfg.u_center + off);
        }
    const geom::PointCloud u(std::move(pts), cfg.u_radius / m * std::sqrt(2.0));
    const auto probe = rotation::weak_spreading_probe(map, u, cfg.epsilon, cfg.radius, cfg.max_n);
    status = probe.found ? 0 : 3;  // not-found is inconclusive, never a disproof
    json out = {{"found", probe.found}};
    if (probe.found) {
        out["n"] = probe.n;
        out["center"] = json::array({real_str(probe.center.x), real_str(probe.center.y)});
    }
    return out;
}

json run_render(const ExperimentConfig& cfg, int& status) {
    std::ifstream in(cfg.record_path);
    if (!in) throw std::invalid_argument("render: cannot open record " + cfg.record_path.string());
    json rec;
    in >> rec;
    if (cfg.output_dir.empty()) bad_field("output_dir", "required for render");

    json out;
    if (rec.contains("stages")) {
        // rebuild a minimal trace from the record
        spreader::StageTrace trace;
        const auto base = cfg.record_path.parent_path();
        for (const json& s : rec["stages"]) {
            spreader::StageRow row;
            row.k_index = s.at("k_index").get<int>();
            row.k_poly = polygon_from_json(s.at("k_polygon"));
            row.d_to_k = serialize::real_from_json(s.at("d_to_k"), "d_to_k");
            row.k_to_d = serialize::real_from_json(s.at("k_to_d"), "k_to_d");
            if (!s.contains("cloud_file"))
                throw std::invalid_argument("render: record has no cloud files (verify with output_dir set)");
            row.cloud = serialize::read_cloud_file(base / s.at("cloud_file").get<std::string>());
            trace.rows.push_back(std::move(row));
        }
        trace.final_hausdorff = serialize::real_from_json(rec.at("final_hausdorff"), "final_hausdorff");
        trace.final_slack = serialize::real_from_json(rec.at("final_slack"), "final_slack");
        svg::render_trace(trace, cfg.output_dir / "trace.svg");
        out["artifacts"] = {{"trace_svg", "trace.svg"}};
    } else if (rec.contains("estimate")) {
        std::vector<rotation::RotationEstimate> ests;
        const json& est = rec["estimate"];
        if (est.contains("hull")) {
            rotation::RotationEstimate e;
            e.n = est.at("n").get<long>();
            e.hull = polygon_from_json(est.at("hull"));
            ests.push_back(std::move(e));
        } else {
            for (const json& h : est.at("hulls")) {
                rotation::RotationEstimate e;
                e.hull = polygon_from_json(h);
                ests.push_back(std::move(e));
            }
        }
        svg::render_hull_series(ests, cfg.output_dir / "hulls.svg");
        out["artifacts"] = {{"hulls_svg", "hulls.svg"}};
    } else {
        throw std::invalid_argument("render: record contains nothing renderable");
    }
    status = 0;
    return out;
}

}  // namespace

RunResult run(const ExperimentConfig& config) {
    const auto started = std::chrono::steady_clock::now();
    if (!config.output_dir.empty()) std::filesystem::create_directories(config.output_dir);

    RunResult result;
    json body;
    switch (config.command) {
        case Command::build: body = run_build(config, result.status); break;
        case Command::verify: body = run_verify(config, result.status); break;
        case Command::rotate: body = run_rotate(config, result.status); break;
        case Command::probe: body = run_probe(config, result.status); break;
        case Command::render: body = run_render(config, result.status); break;
    }

    result.record = {{"config", config.echo}, {"status", result.status}};
    for (auto& [key, value] : body.items()) result.record[key] = std::move(value);
    result.record["timings"] = {{"total_ms", wall_ms(started)}};

    if (!config.output_dir.empty())
        serialize::atomic_write(record_file(config), result.record.dump(2) + "\n");
    return result;
}

}  // namespace torus::experiment
