// Command-line frontend. Every run writes <out>.manifest.json next to its
// primary output; the exit code is 0 exactly when the asserted invariants hold.
#include <CLI11.hpp>
#include <boost/version.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "dtc/serialize.hpp"

namespace fs = std::filesystem;
using dtc::Json;

namespace {

constexpr const char* kVersion = "1.0.0";
constexpr const char* kOutDirEnv = "DTC_OUT_DIR";

enum Exit : int { kOk = 0, kInvariantFailed = 1, kUsage = 2, kDomainError = 3 };

struct Run {
    std::string command;
    std::vector<std::string> args;
    std::optional<std::uint64_t> seed;
    fs::path out;
    std::vector<std::string> outputs;
    bool partial = false;
    std::string error;
};

fs::path resolve_output(const std::string& requested, const std::string& fallback) {
    fs::path p = requested.empty() ? fs::path(fallback) : fs::path(requested);
    if (p.is_relative()) {
        const char* dir = std::getenv(kOutDirEnv);
        if (dir != nullptr && *dir != '\0') p = fs::path(dir) / p;
    }
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    return p;
}

void write_text(Run& run, const fs::path& path, const std::string& text) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + path.string());
    os << text;
    run.outputs.push_back(path.filename().string());
}

void write_json(Run& run, const fs::path& path, const Json& j) { write_text(run, path, j.dump(2) + "\n"); }

void write_manifest(const Run& run, int exit_code) {
    if (run.out.empty()) return;
    Json m{{"tool", "dtc"},
           {"versions", {{"dtc", kVersion}, {"compiler", __VERSION__}, {"boost", BOOST_LIB_VERSION}}},
           {"command", run.command},
           {"flags", run.args},
           {"seed", run.seed ? Json(*run.seed) : Json(nullptr)},
           {"outputs", run.outputs},
           {"exit_code", exit_code},
           {"partial", run.partial}};
    if (!run.error.empty()) m["error"] = run.error;
    fs::path path = run.out;
    path += ".manifest.json";
    std::ofstream os(path, std::ios::binary);
    os << m.dump(2) << "\n";
}

std::vector<int> parse_ints(const std::string& text, std::size_t expected, const std::string& flag) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
    if (out.size() != expected) throw CLI::ValidationError(flag, "expected " + std::to_string(expected) + " integers");
    return out;
}

dtc::Point parse_point(const std::string& text) {
    dtc::Point out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
    return out;
}

Json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw dtc::InvalidArgument("cannot read " + path);
    return Json::parse(in);
}

dtc::PLFunction read_function(const std::string& path, const dtc::FreeSphereComplex& x) {
    dtc::PLFunction f;
    const Json j = read_json(path);
    f.values = (j.is_object() ? j.at("values") : j).get<std::vector<double>>();
    if (f.values.size() != x.coords.size())
        throw dtc::InvalidArgument("f.json has " + std::to_string(f.values.size()) + " values, the complex has " +
                                   std::to_string(x.coords.size()) + " vertices");
    return f;
}

dtc::FreeSphereComplex sphere_from_flag(const std::string& text) {
    const auto v = parse_ints(text, 3, "--sphere");
    return dtc::build_sphere(v[0], v[1], v[2]);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Distributional navigation and Borsuk-Ulam toolkit"};
    app.require_subcommand(1);
    Run run;
    run.args.assign(argv + 1, argv + argc);
    std::function<int()> action;

    // plan
    auto* plan = app.add_subcommand("plan", "Distributional navigation between two orbits of a lens space");
    std::string lens_flag = "3,1", from_flag, to_flag, out_flag;
    int t_samples = dtc::kTimeSamples;
    plan->add_option("--lens", lens_flag, "p,n")->capture_default_str();
    plan->add_option("--from", from_flag, "comma-separated real coordinates of x")->required();
    plan->add_option("--to", to_flag, "comma-separated real coordinates of y")->required();
    plan->add_option("--t-samples", t_samples, "time samples")->capture_default_str()->check(CLI::Range(2, 10001));
    plan->add_option("--out", out_flag, "output JSON");
    plan->callback([&] {
        action = [&] {
            const auto pn = parse_ints(lens_flag, 2, "--lens");
            const dtc::LensAction lens(pn[0], pn[1]);
            const auto x = dtc::SpherePoint::normalized(parse_point(from_flag));
            const auto y = dtc::SpherePoint::normalized(parse_point(to_flag));
            const auto path = dtc::lens_navigation(lens, x, y);
            const auto proj = lens.ambient();
            const double e0 = dtc::wasserstein1(path.evaluate(0.0), dtc::FiniteMeasure::dirac(x.coords(), proj));
            const double e1 = dtc::wasserstein1(path.evaluate(1.0), dtc::FiniteMeasure::dirac(y.coords(), proj));
            Json j = dtc::to_json(path, t_samples);
            j["endpoint_error"] = std::max(e0, e1);
            write_json(run, run.out = resolve_output(out_flag, "traj.json"), j);
            return std::max(e0, e1) <= 1e-9 ? kOk : kInvariantFailed;
        };
    });

    // verify-planner
    auto* verify = app.add_subcommand("verify-planner", "Seeded property check of the navigation planner");
    dtc::VerifyOptions vopt;
    std::uint64_t seed = 0;
    verify->add_option("--lens", lens_flag, "p,n")->capture_default_str();
    verify->add_option("--samples", vopt.samples, "random pairs")->capture_default_str()->check(CLI::PositiveNumber);
    verify->add_option("--seed", seed, "RNG seed")->required();
    verify->add_option("--margin", vopt.margin, "degeneracy margin")->capture_default_str();
    verify->add_option("--out", out_flag, "output JSON");
    verify->callback([&] {
        action = [&] {
            const auto pn = parse_ints(lens_flag, 2, "--lens");
            vopt.p = pn[0];
            vopt.n = pn[1];
            vopt.seed = seed;
            run.seed = seed;
            const auto report = dtc::verify_planner(vopt);
            write_json(run, run.out = resolve_output(out_flag, "report.json"), dtc::to_json(report));
            return report.passed() ? kOk : kInvariantFailed;
        };
    });

    // group
    auto* group = app.add_subcommand("group", "Finite group checks and Frobenius witness searches");
    group->require_subcommand(1);
    auto* ginfo = group->add_subcommand("info", "Centralizers, property N, Frobenius map and fixed sets");
    std::string builtin, table_file;
    int frob_k = 2, max_exponent = 4;
    ginfo->add_option("--builtin", builtin, "cyclic:p | product:a,b,... | symmetric:n");
    ginfo->add_option("--table", table_file, "multiplication table file");
    ginfo->add_option("--frobenius", frob_k, "exponent k")->capture_default_str();
    ginfo->add_option("--max-exponent", max_exponent, "largest n for property N")->capture_default_str();
    ginfo->add_option("--out", out_flag, "output JSON");
    ginfo->callback([&] {
        action = [&] {
            if (builtin.empty() == table_file.empty())
                throw CLI::ValidationError("group info", "exactly one of --builtin and --table is required");
            std::optional<dtc::FiniteGroup> g;
            if (!builtin.empty()) {
                g = dtc::FiniteGroup::builtin(builtin);
            } else {
                std::ifstream in(table_file);
                if (!in) throw dtc::InvalidArgument("cannot read " + table_file);
                g = dtc::FiniteGroup::parse(in);
            }
            Json j{{"order", g->order()}, {"abelian", g->is_abelian()}};
            Json centralizers = Json::array();
            for (dtc::Element a = 0; a < g->order(); ++a) {
                const dtc::Element s[] = {a};
                Json names = Json::array();
                for (auto z : dtc::centralizer(*g, s)) names.push_back(g->name(z));
                centralizers.push_back({{"element", g->name(a)}, {"centralizer", names}});
            }
            j["centralizers"] = centralizers;
            j["property_N_violations"] = dtc::property_N_check(*g, max_exponent).size();
            j["centralizer_dichotomy_violations"] = dtc::centralizer_dichotomy_violations(*g).size();
            const auto frob = dtc::frobenius_injective(*g, frob_k);
            j["frobenius"] = {{"k", frob_k},
                              {"injective", frob.injective},
                              {"witness", frob.witness ? Json({g->name(frob.witness->first), g->name(frob.witness->second)})
                                                       : Json(nullptr)}};
            const auto translation = dtc::translation_action(*g, g->order() - 2);
            std::vector<dtc::Element> all(g->order());
            std::iota(all.begin(), all.end(), 0);
            const bool boundary_empty = dtc::fixed_subcomplex(translation, all).empty;
            j["boundary_fixed_set_empty"] = boundary_empty;
            write_json(run, run.out = resolve_output(out_flag, "group.json"), j);
            return boundary_empty ? kOk : kInvariantFailed;
        };
    });
    auto* gwit = group->add_subcommand("witness", "Search x != y with x^k = y^k in an infinite group");
    std::string family = "klein";
    int bound = 2;
    gwit->add_option("--family", family, "klein | heisenberg")->check(CLI::IsMember({"klein", "heisenberg"}));
    gwit->add_option("--bound", bound, "coordinate box")->capture_default_str();
    gwit->add_option("--k", frob_k, "exponent")->capture_default_str();
    gwit->add_option("--out", out_flag, "output JSON");
    gwit->callback([&] {
        action = [&] {
            const auto fam = family == "klein" ? dtc::GroupFamily::KleinBottle : dtc::GroupFamily::Heisenberg;
            const auto r = dtc::frobenius_witness_search(fam, bound, frob_k);
            Json j{{"family", family},
                   {"bound", bound},
                   {"k", frob_k},
                   {"elements_tested", r.elements_tested},
                   {"witness", r.witness ? Json({r.witness->first, r.witness->second}) : Json(nullptr)}};
            if (r.formula_checked) j["formula_mismatches"] = r.formula_mismatches;
            write_json(run, run.out = resolve_output(out_flag, "witness.json"), j);
            return r.formula_mismatches == 0 ? kOk : kInvariantFailed;
        };
    });

    // complex
    auto* complex = app.add_subcommand("complex", "Simplicial complexes and reduced homology");
    complex->require_subcommand(1);
    auto* chom = complex->add_subcommand("homology", "Reduced integral homology of a complex");
    std::string in_flag;
    chom->add_option("--in", in_flag, "complex JSON {vertices, facets}")->required();
    chom->add_option("--out", out_flag, "output JSON");
    chom->callback([&] {
        action = [&] {
            const auto k = dtc::complex_from_json(read_json(in_flag));
            write_json(run, run.out = resolve_output(out_flag, "homology.json"),
                       {{"complex", dtc::to_json(k)}, {"reduced_homology", dtc::to_json(dtc::reduced_homology(k))}});
            return kOk;
        };
    });
    auto* cskel = complex->add_subcommand("skeleton", "Delta(C)^(n) for |C| = points, with its homology");
    int points = 4, skel_n = 1;
    cskel->add_option("--points", points, "|C|")->required()->check(CLI::Range(1, 12));
    cskel->add_option("--n", skel_n, "skeleton dimension")->required();
    cskel->add_option("--out", out_flag, "output JSON");
    cskel->callback([&] {
        action = [&] {
            const auto k = dtc::measure_skeleton(points, skel_n);
            const auto h = dtc::reduced_homology(k);
            write_json(run, run.out = resolve_output(out_flag, "skeleton.json"),
                       {{"complex", dtc::to_json(k)}, {"reduced_homology", dtc::to_json(h)}});
            return kOk;
        };
    });

    // borsuk-ulam
    auto* bu = app.add_subcommand("borsuk-ulam", "Coincidence sets of PL functions on free Z_p spheres");
    bu->require_subcommand(1);
    std::string sphere_flag = "1,3,4", f_flag;
    dtc::SearchOptions sopt;
    auto* bsearch = bu->add_subcommand("search", "Anneal for a coincidence-free f; exit 0 iff one is certified");
    bsearch->add_option("--sphere", sphere_flag, "k,p,N")->required();
    bsearch->add_option("--restarts", sopt.restarts, "restarts")->capture_default_str()->check(CLI::PositiveNumber);
    bsearch->add_option("--iterations", sopt.iterations, "moves per restart")->capture_default_str();
    bsearch->add_option("--seed", seed, "RNG seed")->required();
    bsearch->add_option("--out", out_flag, "output JSON");
    bsearch->callback([&] {
        action = [&] {
            const auto x = sphere_from_flag(sphere_flag);
            sopt.seed = seed;
            run.seed = seed;
            const auto r = dtc::search_coincidence_free(x, sopt);
            write_json(run, run.out = resolve_output(out_flag, "result.json"), dtc::to_json(r));
            return r.certified ? kOk : kInvariantFailed;
        };
    });
    auto* bcert = bu->add_subcommand("certify", "Exact coincidence check of f; exit 0 iff A_f is empty");
    bcert->add_option("--sphere", sphere_flag, "k,p,N")->required();
    bcert->add_option("--f", f_flag, "flat JSON array of vertex values")->required();
    bcert->add_option("--out", out_flag, "output JSON");
    bcert->callback([&] {
        action = [&] {
            const auto x = sphere_from_flag(sphere_flag);
            const auto c = dtc::coincidence_set(x, read_function(f_flag, x));
            write_json(run, run.out = resolve_output(out_flag, "certificate.json"), dtc::to_json(c));
            return c.empty ? kOk : kInvariantFailed;
        };
    });
    auto* bsec = bu->add_subcommand("section", "Measure-valued section from a coincidence-free f");
    int mesh_level = 1;
    bsec->add_option("--sphere", sphere_flag, "k,p,N")->capture_default_str();
    bsec->add_option("--from-f", f_flag, "flat JSON array of vertex values")->required();
    bsec->add_option("--mesh-level", mesh_level, "mesh refinement")->capture_default_str()->check(CLI::Range(0, 8));
    bsec->add_option("--out", out_flag, "output JSON");
    bsec->callback([&] {
        action = [&] {
            const auto x = sphere_from_flag(sphere_flag);
            const auto s = dtc::section_from_function(x, read_function(f_flag, x), mesh_level);
            const auto check = dtc::check_section(x, s);
            const auto back = dtc::function_from_section(x, s);
            write_json(run, run.out = resolve_output(out_flag, "section.json"),
                       {{"check", dtc::to_json(check)}, {"round_trip", dtc::to_json(back)}, {"section", dtc::to_json(s)}});
            const bool ok = check.max_support <= static_cast<std::size_t>(x.p - 1) && check.max_mass_error <= 1e-9 &&
                            check.max_pushforward_error <= 1e-9 && check.max_pushforward_support == 1 &&
                            back.mesh_coincidence_free;
            return ok ? kOk : kInvariantFailed;
        };
    });

    // bounds
    auto* bounds = app.add_subcommand("bounds", "Transcribed dcat and dTC bounds for lens spaces (CSV)");
    int bp = 3, bm = 9, bk = 1;
    bounds->add_option("--p", bp, "group order")->required();
    bounds->add_option("--m", bm, "odd lens dimension")->required();
    bounds->add_option("--k", bk, "product power")->capture_default_str();
    bounds->add_option("--out", out_flag, "output CSV");
    bounds->callback([&] {
        action = [&] {
            const auto entries = dtc::bounds_table(bp, bm, bk);
            write_text(run, run.out = resolve_output(out_flag, "bounds.csv"), dtc::bounds_csv(entries));
            return kOk;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kUsage;
    }
    for (auto* sub : app.get_subcommands()) {
        run.command = sub->get_name();
        for (auto* nested : sub->get_subcommands()) run.command += " " + nested->get_name();
    }

    int code = kOk;
    try {
        code = action();
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        run.partial = true;
        run.error = e.what();
        code = kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        run.partial = true;
        run.error = e.what();
        code = kDomainError;
    }
    if (run.out.empty() && code != kOk) run.out = resolve_output(out_flag, "failed-run");
    write_manifest(run, code);
    return code;
}
