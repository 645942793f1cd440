// hforge: construct sphere-catenoid surfaces, evaluate curvature energies,
// and run the verification suites from the command line.
#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "hforge/constructions.hpp"
#include "hforge/diagnostics.hpp"
#include "hforge/energy.hpp"
#include "hforge/errors.hpp"
#include "hforge/fixtures.hpp"
#include "hforge/optimizer.hpp"
#include "hforge/verify.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitInvalidSpec = 2;
constexpr int kExitNumerical = 3;

struct SpecSource {
    std::string config_path;
    int m = 2, g = 0;
    double delta = 0.05, R = 4.0, theta_eta = 0.5, t = 0.0, alpha = 1.0;
    bool match_area = false;

    // flags that were explicitly set override config-file values
    void add_options(CLI::App* cmd) {
        cmd->add_option("--config", config_path, "JSON surface spec or parameter bag");
        cmd->add_option("--m", m, "sheet count (>= 2)");
        cmd->add_option("--g", g, "genus (>= 0)");
        cmd->add_option("--delta", delta, "flattening scale");
        cmd->add_option("--R", R, "neck half-length");
        cmd->add_option("--theta-eta", theta_eta, "neck scale fraction in (0,1)");
        cmd->add_option("--t", t, "bump amplitude");
        cmd->add_option("--alpha", alpha, "bump width factor");
        cmd->add_flag("--match-area", match_area,
                      "solve the bump amplitude so the area reaches 4 pi m");
    }

    hforge::GenusSurfaceSpec resolve(CLI::App* cmd) const {
        hforge::GenusSurfaceSpec spec;
        bool from_file = false;
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw hforge::InfeasibleSpec("cannot open config: " + config_path);
            std::stringstream ss;
            ss << in.rdbuf();
            const json j = json::parse(ss.str());
            if (j.contains("spec_version")) {
                spec = hforge::spec_from_json(ss.str());
                from_file = true;
            } else {
                // parameter bag: known keys only, flags take precedence
                SpecSource bag = *this;
                static const char* known[] = {"m", "g", "delta", "R", "theta_eta", "t", "alpha"};
                for (auto it = j.begin(); it != j.end(); ++it) {
                    bool ok = false;
                    for (const char* k : known) ok = ok || it.key() == k;
                    if (!ok) throw hforge::InfeasibleSpec("unknown config key: " + it.key());
                }
                auto pick_int = [&](const char* key, int flag_val, const char* flag) {
                    return cmd->count(flag) ? flag_val : j.value(key, flag_val);
                };
                auto pick = [&](const char* key, double flag_val, const char* flag) {
                    return cmd->count(flag) ? flag_val : j.value(key, flag_val);
                };
                bag.m = pick_int("m", m, "--m");
                bag.g = pick_int("g", g, "--g");
                bag.delta = pick("delta", delta, "--delta");
                bag.R = pick("R", R, "--R");
                bag.theta_eta = pick("theta_eta", theta_eta, "--theta-eta");
                bag.t = pick("t", t, "--t");
                bag.alpha = pick("alpha", alpha, "--alpha");
                spec = hforge::default_spec(bag.m, bag.g, bag.delta, bag.R, bag.theta_eta,
                                            bag.t, bag.alpha);
                return spec;
            }
        }
        if (!from_file)
            spec = hforge::default_spec(m, g, delta, R, theta_eta, t, alpha);
        return spec;
    }
};

void require_feasible(const hforge::GenusSurfaceSpec& spec) {
    const std::vector<std::string> bad = hforge::validate(spec);
    if (!bad.empty()) {
        std::cerr << "infeasible spec:\n";
        for (const std::string& b : bad) std::cerr << "  - " << b << '\n';
        std::exit(kExitInvalidSpec);
    }
}

std::vector<double> parse_list(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
    return out;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw hforge::ForgeError("cannot write " + path);
    out << content;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sphere-catenoid surface construction and curvature-energy toolkit"};
    app.require_subcommand(1);

    // ------------------------------------------------------------- generate
    auto* gen = app.add_subcommand("generate", "build a surface, write spec.json and mesh.obj");
    SpecSource gen_src;
    gen_src.add_options(gen);
    std::string gen_out = ".";
    int gen_resolution = 96;
    gen->add_option("--out", gen_out, "output directory");
    gen->add_option("--resolution", gen_resolution, "mesh segments per full turn");

    // --------------------------------------------------------------- energy
    auto* en = app.add_subcommand("energy", "evaluate area/Willmore/Helfrich/Gauss totals");
    SpecSource en_src;
    en_src.add_options(en);
    std::string en_fixture, en_format = "json", en_out;
    double en_chi_h = 0.25, en_chi_k = 0.0, en_h0 = 0.0, en_tol = 1e-6;
    en->add_option("--fixture", en_fixture,
                   "reference surface instead of a spec: unit-sphere | theta2-sphere");
    en->add_option("--chi-h", en_chi_h, "Helfrich chi_H");
    en->add_option("--chi-k", en_chi_k, "Helfrich chi_K");
    en->add_option("--h0", en_h0, "spontaneous curvature");
    en->add_option("--tol", en_tol, "quadrature tolerance");
    en->add_option("--format", en_format, "json | csv");
    en->add_option("--out", en_out, "write the report here instead of stdout");

    // --------------------------------------------------------------- verify
    auto* ver = app.add_subcommand("verify", "run a named verification suite");
    std::string ver_suite = "all";
    uint64_t ver_seed = 1;
    std::string ver_out;
    ver->add_option("suite", ver_suite, "profiles|curvature|gauss-bonnet|mueller-roeger|"
                                        "li-yau|convergence|decay|divergence|all");
    ver->add_option("--seed", ver_seed, "seed for sampled checks");
    ver->add_option("--out", ver_out, "write the report here as well");

    // ---------------------------------------------------------------- sweep
    auto* sw = app.add_subcommand("sweep", "grid sweep over construction parameters");
    int sw_m = 2, sw_g = 0;
    std::string sw_deltas = "0.1,0.05", sw_Rs = "3,4", sw_thetas = "0.5", sw_ts = "0";
    double sw_tol = 1e-4;
    std::string sw_out;
    sw->add_option("--m", sw_m);
    sw->add_option("--g", sw_g);
    sw->add_option("--deltas", sw_deltas, "comma list");
    sw->add_option("--Rs", sw_Rs, "comma list");
    sw->add_option("--thetas", sw_thetas, "comma list of theta_eta");
    sw->add_option("--ts", sw_ts, "comma list of bump amplitudes");
    sw->add_option("--tol", sw_tol);
    sw->add_option("--out", sw_out, "CSV output path");

    // ------------------------------------------------------------- minimize
    auto* mini = app.add_subcommand("minimize", "search for minimal Willmore excess");
    int mini_m = 2, mini_g = 3, mini_budget = 200;
    double mini_eps = 0.5, mini_tol = 1e-5;
    uint64_t mini_seed = 1;
    std::string mini_out;
    mini->add_option("--m", mini_m);
    mini->add_option("--g", mini_g);
    mini->add_option("--eps", mini_eps, "target excess");
    mini->add_option("--budget", mini_budget, "objective evaluation budget");
    mini->add_option("--seed", mini_seed);
    mini->add_option("--tol", mini_tol);
    mini->add_option("--out", mini_out, "JSON output path");

    // ------------------------------------------------------ demo-divergence
    auto* demo = app.add_subcommand("demo-divergence",
                                    "Helfrich energy against growing genus, chi_K > 0");
    double demo_chi_h = 0.25, demo_chi_k = 1.0;
    std::string demo_genus = "1,2,4,8", demo_out;
    double demo_tol = 1e-5;
    demo->add_option("--chi-h", demo_chi_h);
    demo->add_option("--chiK", demo_chi_k);
    demo->add_option("--genus", demo_genus, "comma list of genera");
    demo->add_option("--tol", demo_tol);
    demo->add_option("--out", demo_out, "CSV output path");

    // -------------------------------------------------------------- profile
    auto* prof = app.add_subcommand("profile", "radial-mass convergence along a delta family");
    int prof_m = 2, prof_g = 0;
    std::string prof_deltas = "0.1,0.05,0.02", prof_out;
    double prof_tol = 1e-4;
    prof->add_option("--m", prof_m);
    prof->add_option("--g", prof_g);
    prof->add_option("--delta", prof_deltas, "comma list of deltas");
    prof->add_option("--tol", prof_tol);
    prof->add_option("--out", prof_out, "CSV output path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen) {
            hforge::GenusSurfaceSpec spec = gen_src.resolve(gen);
            if (gen_src.match_area && spec.t == 0)
                spec.t = hforge::solve_bump_amplitude(spec, 4 * M_PI * spec.m);
            require_feasible(spec);
            const hforge::SurfaceAssembly assembly = hforge::genus_surface(spec);
            const hforge::TriMesh mesh = hforge::triangulate(assembly, gen_resolution);
            const int mesh_genus = hforge::euler_genus(mesh);
            if (mesh_genus != spec.g)
                throw hforge::ContradictionDetected("mesh genus disagrees with the spec");
            std::filesystem::create_directories(gen_out);
            write_file(gen_out + "/spec.json", hforge::spec_to_json(spec) + "\n");
            std::ostringstream obj;
            hforge::save_obj(mesh, obj);
            write_file(gen_out + "/mesh.obj", obj.str());
            json summary;
            summary["genus"] = mesh_genus;
            summary["sheets"] = spec.m;
            summary["vertices"] = mesh.vertices.size();
            summary["triangles"] = mesh.triangles.size();
            summary["connected"] = hforge::is_connected(mesh);
            summary["watertight"] = hforge::is_watertight(mesh);
            std::cout << summary.dump(2) << '\n';
            return kExitOk;
        }

        if (*en) {
            hforge::SurfaceAssembly assembly;
            if (!en_fixture.empty()) {
                if (en_fixture == "unit-sphere")
                    assembly = hforge::fixtures::sphere();
                else if (en_fixture == "theta2-sphere")
                    assembly = hforge::fixtures::sphere(1.0, 2);
                else
                    throw hforge::InfeasibleSpec("unknown fixture: " + en_fixture);
            } else {
                const hforge::GenusSurfaceSpec spec = en_src.resolve(en);
                require_feasible(spec);
                assembly = hforge::genus_surface(spec);
            }
            hforge::QuadOptions opt;
            opt.tol = en_tol;
            const hforge::HelfrichParams hp{en_chi_h, en_chi_k, en_h0};
            const hforge::EnergyReport rep = hforge::evaluate_energy(assembly, opt, hp);
            std::string payload;
            if (en_format == "csv") {
                payload = hforge::EnergyReport::csv_header() + "\n" + rep.to_csv_row() + "\n";
            } else {
                json j = json::parse(rep.to_json());
                if (assembly.meta.closed)
                    j["genus_from_gauss"] = hforge::genus_from_gauss(assembly, opt);
                if (assembly.meta.in_unit_ball) {
                    const hforge::BallCheck bc = hforge::mueller_roeger_check(assembly, en_tol);
                    j["mueller_roeger_margin"] = bc.margin;
                }
                payload = j.dump(2) + "\n";
            }
            if (en_out.empty())
                std::cout << payload;
            else
                write_file(en_out, payload);
            return kExitOk;
        }

        if (*ver) {
            std::vector<std::string> suites;
            if (ver_suite == "all")
                suites = hforge::suite_names();
            else
                suites.push_back(ver_suite);
            std::ostringstream report;
            bool all_pass = true;
            for (const std::string& s : suites) {
                const std::vector<hforge::CheckResult> checks = hforge::run_suite(s, ver_seed);
                report << hforge::format_report(s, checks);
                for (const hforge::CheckResult& c : checks) all_pass = all_pass && c.pass;
            }
            std::cout << report.str();
            if (!ver_out.empty()) write_file(ver_out, report.str());
            return all_pass ? kExitOk : kExitVerifyFail;
        }

        if (*sw) {
            hforge::QuadOptions opt;
            opt.tol = sw_tol;
            const hforge::SweepTable table =
                hforge::sweep(sw_m, sw_g, parse_list(sw_deltas), parse_list(sw_Rs),
                              parse_list(sw_thetas), parse_list(sw_ts), opt);
            const std::string csv = table.to_csv();
            if (sw_out.empty())
                std::cout << csv;
            else
                write_file(sw_out, csv);
            return kExitOk;
        }

        if (*mini) {
            hforge::QuadOptions opt;
            opt.tol = mini_tol;
            const hforge::MinimizeResult res =
                hforge::minimize_excess(mini_m, mini_g, mini_eps, mini_budget, opt, mini_seed);
            json j;
            j["success"] = res.success;
            j["excess"] = res.excess;
            j["area"] = res.area;
            j["willmore"] = res.report.willmore;
            j["in_unit_ball"] = res.in_unit_ball;
            j["evaluations"] = res.evaluations;
            j["message"] = res.message;
            j["spec"] = json::parse(hforge::spec_to_json(res.spec));
            const std::string payload = j.dump(2) + "\n";
            if (mini_out.empty())
                std::cout << payload;
            else
                write_file(mini_out, payload);
            return res.success ? kExitOk : kExitVerifyFail;
        }

        if (*demo) {
            hforge::QuadOptions opt;
            opt.tol = demo_tol;
            std::vector<int> gs;
            for (double v : parse_list(demo_genus)) gs.push_back(static_cast<int>(v));
            const hforge::DivergenceDemo d = hforge::helfrich_divergence_demo(
                hforge::HelfrichParams{demo_chi_h, demo_chi_k, 0.0}, gs, opt);
            std::ostringstream csv;
            csv << "g,helfrich,willmore,total_gauss\n";
            char buf[96];
            for (const hforge::DivergenceRow& r : d.rows) {
                std::snprintf(buf, sizeof buf, "%d,%.12g,%.12g,%.12g\n", r.g, r.energy,
                              r.willmore, r.total_gauss);
                csv << buf;
            }
            std::snprintf(buf, sizeof buf, "# slope=%.12g intercept=%.12g residual=%.12g\n",
                          d.slope_fit.slope, d.slope_fit.intercept, d.slope_fit.residual);
            csv << buf;
            if (demo_out.empty())
                std::cout << csv.str();
            else
                write_file(demo_out, csv.str());
            return kExitOk;
        }

        if (*prof) {
            std::ostringstream csv;
            csv << "delta,convergence_distance\n";
            char buf[64];
            for (double d : parse_list(prof_deltas)) {
                const hforge::TunedSurface tuned = hforge::tuned_surface(prof_m, prof_g, d);
                const double dist =
                    hforge::convergence_distance(tuned.assembly, prof_m, prof_tol);
                std::snprintf(buf, sizeof buf, "%.12g,%.12g\n", d, dist);
                csv << buf;
            }
            if (prof_out.empty())
                std::cout << csv.str();
            else
                write_file(prof_out, csv.str());
            return kExitOk;
        }
    } catch (const hforge::InfeasibleSpec& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalidSpec;
    } catch (const hforge::InfeasibleProfile& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalidSpec;
    } catch (const hforge::GluingConflict& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalidSpec;
    } catch (const hforge::SupportTooLarge& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalidSpec;
    } catch (const hforge::ForgeError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumerical;
    }
    return kExitOk;
}
