// wp-lab: geodesic-length series, strip-model variations and model-metric
// computations from the command line.  Single runs emit one JSON document
// (replayable via `wp-lab replay`), sweeps emit CSV in grid order.

#include <wplab/model.hpp>
#include <wplab/serialize.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <future>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

using wplab::serialize::format_double;
using wplab::serialize::json;
namespace grp = wplab::group;
namespace pr = wplab::pairing;

namespace {

int thread_cap() {
    if (const char* env = std::getenv("WP_LAB_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream os(out_path, std::ios::binary);
    if (!os) throw wplab::DomainError("cannot open output file " + out_path);
    os << text;
}

grp::MarkedGroup build_surface(const json& spec_json) {
    const grp::SurfaceSpec spec = wplab::serialize::surface_from_json(spec_json);
    if (const auto* pt = std::get_if<grp::PuncturedTorus>(&spec))
        return grp::build_punctured_torus(*pt);
    return grp::build_pants(std::get<grp::Pants>(spec));
}

std::complex<double> parse_point(const std::string& text) {
    std::istringstream is(text);
    double re = 0, im = 0;
    char c = 0;
    if (!(is >> re >> c >> im) || c != ',') throw wplab::DomainError("point must be re,im");
    return {re, im};
}

// ---- single-run handlers, keyed by command name for replay ----

json run_surface(const json& in) {
    const grp::MarkedGroup G = build_surface(in.at("surface"));
    json gens = json::object();
    json traces = json::object();
    for (const auto& [name, M] : G.generators) {
        gens[name] = {M.a, M.b, M.c, M.d};
        traces[name] = M.trace();
    }
    const auto& g0 = G.generators[0].second;
    const auto& g1 = G.generators[1].second;
    traces[G.generators[0].first + G.generators[1].first] = (g0 * g1).trace();
    json res{{"generators", gens}, {"traces", traces}, {"distinguished", G.distinguished}};
    res["commutator_trace"] = (g0 * g1 * g0.inverse() * g1.inverse()).trace();
    return res;
}

json run_pairing(const json& in) {
    const grp::MarkedGroup G = build_surface(in.at("surface"));
    const auto est = pr::riera_pairing(G, G.parse(in.at("alpha").get<std::string>()),
                                       G.parse(in.at("beta").get<std::string>()),
                                       in.at("depth").get<int>());
    return wplab::serialize::pairing_to_json(est);
}

json run_cosine(const json& in) {
    const grp::MarkedGroup G = build_surface(in.at("surface"));
    const std::string alpha = in.at("alpha").get<std::string>();
    const std::string beta = in.at("beta").get<std::string>();
    const int depth = in.at("depth").get<int>();
    json res{{"cosine_sum", pr::cosine_sum(G, G.parse(alpha), G.parse(beta), depth)}};
    const auto* pt = std::get_if<grp::PuncturedTorus>(&G.spec);
    if (pt && alpha == G.distinguished) {
        const double h = in.value("fd_step", 1e-4);
        res["twist_fd"] = pr::twist_derivative_fd(*pt, G.parse(beta), h);
    }
    return res;
}

json run_pseries(const json& in) {
    const grp::MarkedGroup G = build_surface(in.at("surface"));
    const auto rep = pr::p_series(G, G.parse(in.at("alpha").get<std::string>()),
                                  parse_point(in.at("point").get<std::string>()),
                                  in.at("depth").get<int>());
    return wplab::serialize::series_to_json(rep);
}

json run_strip(const json& in) {
    const wplab::strip::FourierQD phi = wplab::serialize::fourier_from_json(in.at("qd"));
    json res = wplab::serialize::variation_to_json(wplab::strip::second_variation(phi));
    if (in.contains("grid")) {
        res["oracle"] = wplab::serialize::variation_to_json(
            wplab::strip::quadrature_oracle(phi, in.at("grid").get<int>()));
    }
    return res;
}

json run_model_distance(const json& in) {
    const double d = wplab::model::distance({in.at("r1").get<double>(), in.at("theta1").get<double>()},
                                            {in.at("r2").get<double>(), in.at("theta2").get<double>()});
    return json{{"distance", d}};
}

json run_model_dictionary(const json& in) {
    const double r = in.at("r").get<double>();
    const auto d = wplab::model::lambda_dictionary(r);
    return json{{"l", d.l},
                {"d_stratum_wp", d.d_stratum_wp},
                {"unit_speed_check", d.unit_speed_check},
                {"kahler_residual", wplab::model::kahler_identity_check(r)}};
}

json run_model_curvature(const json& in) {
    const wplab::model::ModelPoint p{in.at("r").get<double>(), 0};
    return json{{"closed_form", wplab::model::sectional_curvature(p)},
                {"from_connection", wplab::model::sectional_curvature_from_connection(p)}};
}

json run_fit(const json& in) {
    std::vector<double> xs = in.at("xs").get<std::vector<double>>();
    std::vector<double> ys = in.at("ys").get<std::vector<double>>();
    const std::string window = in.value("window", "small-half");
    wplab::cli::FitResult fr;
    if (window == "all") {
        fr = wplab::cli::fit_order(xs, ys);
    } else {
        // asymptotic orders hold as l -> 0: fit the smallest-x half
        std::vector<size_t> idx(xs.size());
        for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return xs[a] < xs[b]; });
        std::vector<double> sx, sy;
        for (size_t i : idx) {
            sx.push_back(xs[i]);
            sy.push_back(ys[i]);
        }
        const size_t half = std::max<size_t>(3, (sx.size() + 1) / 2);
        fr = wplab::cli::fit_order(sx, sy, 0, std::min(half, sx.size()));
    }
    return wplab::serialize::fit_to_json(fr);
}

const std::map<std::string, std::function<json(const json&)>> kHandlers = {
    {"surface", run_surface},
    {"pairing", run_pairing},
    {"cosine", run_cosine},
    {"pseries", run_pseries},
    {"strip", run_strip},
    {"model-distance", run_model_distance},
    {"model-dictionary", run_model_dictionary},
    {"model-curvature", run_model_curvature},
    {"fit", run_fit},
};

std::string make_document(const std::string& command, const json& inputs) {
    const json result = kHandlers.at(command)(inputs);
    const json doc{{"command", command}, {"inputs", inputs}, {"result", result}};
    return doc.dump(2) + "\n";
}

// ---- sweeps: parallel over grid points, rows in grid order ----

struct SweepRow {
    std::vector<std::pair<std::string, double>> cols;
};

std::string run_sweep(const std::string& target, const wplab::cli::SweepGrid& grid, int depth,
                      double tau, const std::string& point_text) {
    const std::vector<double> ls = grid.points();
    auto eval = [&](double l) -> SweepRow {
        if (target == "pairing-remainder") {
            const auto G = grp::build_punctured_torus({l, tau});
            const auto est = pr::riera_pairing(G, G.parse("A"), G.parse("A"), depth);
            // remainder = value - (2/pi) l, computed without cancellation
            return {{{"l", l},
                     {"remainder", 2 / M_PI * est.coset_sum},
                     {"value", est.value},
                     {"last_shell", est.last_shell},
                     {"terms", static_cast<double>(est.terms)}}};
        }
        if (target == "pairing") {
            const auto G = grp::build_punctured_torus({l, tau});
            const auto est = pr::riera_pairing(G, G.parse("A"), G.parse("A"), depth);
            return {{{"l", l},
                     {"value", est.value},
                     {"last_shell", est.last_shell},
                     {"tail_estimate", est.tail_estimate}}};
        }
        if (target == "pseries-bound") {
            const auto G = grp::build_punctured_torus({l, tau});
            const auto rep = pr::p_series(G, G.parse("A"), parse_point(point_text), depth);
            return {{{"l", l},
                     {"value", rep.value},
                     {"ratio", rep.value / (1 + l * std::exp(l / 2))},
                     {"last_shell", rep.last_shell}}};
        }
        if (target == "collar") {
            const auto c = wplab::hyp::collar_width(l);
            return {{{"l", l}, {"width", c.width}}};
        }
        throw wplab::DomainError("unknown sweep target: " + target);
    };

    std::vector<SweepRow> rows(ls.size());
    const int cap = thread_cap();
    for (size_t base = 0; base < ls.size(); base += cap) {
        std::vector<std::future<SweepRow>> futs;
        const size_t end = std::min(ls.size(), base + cap);
        for (size_t i = base; i < end; ++i)
            futs.push_back(std::async(std::launch::async, eval, ls[i]));
        for (size_t i = base; i < end; ++i) rows[i] = futs[i - base].get();
    }

    std::ostringstream os;
    for (size_t j = 0; j < rows[0].cols.size(); ++j)
        os << rows[0].cols[j].first << (j + 1 < rows[0].cols.size() ? "," : "\n");
    for (const auto& row : rows)
        for (size_t j = 0; j < row.cols.size(); ++j)
            os << format_double(row.cols[j].second) << (j + 1 < row.cols.size() ? "," : "\n");
    return os.str();
}

std::string run_model_geodesic(double r0, double theta0, double rdot, double thetadot,
                               double T, double h, int stride) {
    const auto traj =
        wplab::model::geodesic_flow({{r0, theta0}, rdot, thetadot}, T, h, stride);
    std::ostringstream os;
    os << "t,r,theta,rdot,thetadot,E,L\n";
    for (const auto& s : traj.samples) {
        os << format_double(s.t) << ',' << format_double(s.r) << ',' << format_double(s.theta)
           << ',' << format_double(s.rdot) << ',' << format_double(s.thetadot) << ','
           << format_double(s.E) << ',' << format_double(s.L) << '\n';
    }
    return os.str();
}

// read a CSV with a header line; returns columns by name
std::map<std::string, std::vector<double>> read_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw wplab::DomainError("empty CSV input");
    std::vector<std::string> names;
    {
        std::istringstream hs(line);
        std::string cell;
        while (std::getline(hs, cell, ',')) names.push_back(cell);
    }
    std::map<std::string, std::vector<double>> cols;
    std::vector<std::vector<double>*> order;
    for (auto& n : names) order.push_back(&cols[n]);
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string cell;
        size_t j = 0;
        while (std::getline(ls, cell, ',') && j < order.size())
            order[j++]->push_back(std::strtod(cell.c_str(), nullptr));
    }
    return cols;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"geodesic-length series, strip-model variations and the singular model metric"};
    app.require_subcommand(1);

    std::string surface_json, alpha = "A", beta = "A", out_path, point_text = "0,1";
    std::string qd_json, grid_text, target, in_path, window = "small-half", xcol, ycol;
    int depth = 10, grid_res = 0, stride = 1;
    double fd_step = 1e-4, tau = 0;
    double r0 = 1, theta0 = 0, rdot = -0.5, thetadot = 0, T = 1, hstep = 1e-4;
    double r1 = 1, th1 = 0, r2 = 1, th2 = 0, rdict = 1;
    bool log_grid = false, check = false;

    auto add_surface = [&](CLI::App* cmd) {
        cmd->add_option("--surface", surface_json,
                        "surface spec JSON, e.g. '{\"kind\":\"punctured_torus\",\"l\":0.5,\"tau\":0}'")
            ->required();
        cmd->add_option("--out", out_path, "write output to a file instead of stdout");
    };

    auto* c_surface = app.add_subcommand("surface", "build a marked group and report traces");
    add_surface(c_surface);

    auto* c_pairing = app.add_subcommand("pairing", "gradient-pairing series over double cosets");
    add_surface(c_pairing);
    c_pairing->add_option("--alpha", alpha, "first curve word (uppercase letter, lowercase = inverse)");
    c_pairing->add_option("--beta", beta, "second curve word");
    c_pairing->add_option("--depth", depth, "double-coset word-length cap");

    auto* c_cosine = app.add_subcommand("cosine", "oriented intersection cosine sum (+ twist FD)");
    add_surface(c_cosine);
    c_cosine->add_option("--alpha", alpha);
    c_cosine->add_option("--beta", beta);
    c_cosine->add_option("--depth", depth);
    c_cosine->add_option("--fd-step", fd_step, "central-difference step for the twist derivative");

    auto* c_pseries = app.add_subcommand("pseries", "inverse-square exponential-distance series");
    add_surface(c_pseries);
    c_pseries->add_option("--alpha", alpha);
    c_pseries->add_option("--point", point_text, "basepoint re,im");
    c_pseries->add_option("--depth", depth);

    auto* c_strip = app.add_subcommand("strip", "variation report of a Fourier quadratic differential");
    c_strip->add_option("--qd", qd_json, "FourierQD JSON {\"l\":...,\"coeffs\":[[n,re,im],...]}")
        ->required();
    c_strip->add_option("--grid", grid_res, "also run the quadrature oracle at this y-resolution");
    c_strip->add_option("--out", out_path);

    auto* c_model = app.add_subcommand("model", "model metric 4dr^2 + r^6 dtheta^2");
    c_model->require_subcommand(1);
    auto* m_geo = c_model->add_subcommand("geodesic", "integrate the geodesic flow, CSV output");
    m_geo->add_option("--r0", r0)->required();
    m_geo->add_option("--theta0", theta0);
    m_geo->add_option("--rdot", rdot)->required();
    m_geo->add_option("--thetadot", thetadot);
    m_geo->add_option("--T", T)->required();
    m_geo->add_option("--h", hstep, "integrator step");
    m_geo->add_option("--stride", stride, "sample every k-th step");
    m_geo->add_option("--out", out_path);
    auto* m_dist = c_model->add_subcommand("distance", "geodesic distance by Clairaut shooting");
    m_dist->add_option("--r1", r1)->required();
    m_dist->add_option("--theta1", th1);
    m_dist->add_option("--r2", r2)->required();
    m_dist->add_option("--theta2", th2);
    m_dist->add_option("--out", out_path);
    auto* m_dict = c_model->add_subcommand("dictionary", "2 pi^2 r^2 = l dictionary and checks");
    m_dict->add_option("--r", rdict)->required();
    m_dict->add_option("--out", out_path);
    auto* m_curv = c_model->add_subcommand("curvature", "sectional curvature, two routes");
    m_curv->add_option("--r", rdict)->required();
    m_curv->add_option("--out", out_path);

    auto* c_sweep = app.add_subcommand("sweep", "parameter sweep, CSV in grid order");
    c_sweep->add_option("--target", target,
                        "pairing-remainder | pairing | pseries-bound | collar")->required();
    c_sweep->add_option("--l", grid_text, "grid from:to:count")->required();
    c_sweep->add_flag("--log", log_grid, "log-spaced grid");
    c_sweep->add_option("--depth", depth);
    c_sweep->add_option("--tau", tau, "twist for torus-based targets");
    c_sweep->add_option("--point", point_text, "basepoint for pseries-bound");
    c_sweep->add_option("--out", out_path);

    auto* c_fit = app.add_subcommand("fit", "log-log order fit of a sweep CSV (stdin or --in)");
    c_fit->add_option("--in", in_path, "CSV file (default: stdin)");
    c_fit->add_option("--x", xcol, "x column name (default: first column)");
    c_fit->add_option("--y", ycol, "y column name (default: second column)");
    c_fit->add_option("--window", window, "small-half (default) | all");
    c_fit->add_option("--out", out_path);

    auto* c_replay = app.add_subcommand("replay", "re-run a recorded JSON document");
    c_replay->add_option("--in", in_path, "document produced by a single-run subcommand")->required();
    c_replay->add_flag("--check", check, "exit 3 unless the result reproduces bit-identically");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*c_surface) {
            write_output(make_document("surface", json{{"surface", json::parse(surface_json)}}),
                         out_path);
        } else if (*c_pairing) {
            write_output(make_document("pairing", json{{"surface", json::parse(surface_json)},
                                                       {"alpha", alpha},
                                                       {"beta", beta},
                                                       {"depth", depth}}),
                         out_path);
        } else if (*c_cosine) {
            write_output(make_document("cosine", json{{"surface", json::parse(surface_json)},
                                                      {"alpha", alpha},
                                                      {"beta", beta},
                                                      {"depth", depth},
                                                      {"fd_step", fd_step}}),
                         out_path);
        } else if (*c_pseries) {
            write_output(make_document("pseries", json{{"surface", json::parse(surface_json)},
                                                       {"alpha", alpha},
                                                       {"point", point_text},
                                                       {"depth", depth}}),
                         out_path);
        } else if (*c_strip) {
            json in{{"qd", json::parse(qd_json)}};
            if (grid_res > 0) in["grid"] = grid_res;
            write_output(make_document("strip", in), out_path);
        } else if (*m_geo) {
            write_output(run_model_geodesic(r0, theta0, rdot, thetadot, T, hstep, stride), out_path);
        } else if (*m_dist) {
            write_output(make_document("model-distance", json{{"r1", r1},
                                                              {"theta1", th1},
                                                              {"r2", r2},
                                                              {"theta2", th2}}),
                         out_path);
        } else if (*m_dict) {
            write_output(make_document("model-dictionary", json{{"r", rdict}}), out_path);
        } else if (*m_curv) {
            write_output(make_document("model-curvature", json{{"r", rdict}}), out_path);
        } else if (*c_sweep) {
            write_output(run_sweep(target, wplab::cli::parse_grid(grid_text, log_grid), depth,
                                   tau, point_text),
                         out_path);
        } else if (*c_fit) {
            std::map<std::string, std::vector<double>> cols;
            std::vector<std::string> names;
            {
                std::ifstream fs;
                std::istream* is = &std::cin;
                if (!in_path.empty()) {
                    fs.open(in_path);
                    if (!fs) throw wplab::DomainError("cannot open " + in_path);
                    is = &fs;
                }
                // keep header order for the defaults
                std::string header;
                std::getline(*is, header);
                std::istringstream hs(header);
                std::string cell;
                while (std::getline(hs, cell, ',')) names.push_back(cell);
                std::ostringstream rest;
                rest << header << '\n' << is->rdbuf();
                std::istringstream all(rest.str());
                cols = read_csv(all);
            }
            if (names.size() < 2) throw wplab::DomainError("fit needs at least two CSV columns");
            const std::string xs_name = xcol.empty() ? names[0] : xcol;
            const std::string ys_name = ycol.empty() ? names[1] : ycol;
            if (!cols.count(xs_name) || !cols.count(ys_name))
                throw wplab::DomainError("no such CSV column");
            write_output(make_document("fit", json{{"xs", cols[xs_name]},
                                                   {"ys", cols[ys_name]},
                                                   {"window", window}}),
                         out_path);
        } else if (*c_replay) {
            std::ifstream fs(in_path);
            if (!fs) throw wplab::DomainError("cannot open " + in_path);
            const json doc = json::parse(fs);
            const std::string command = doc.at("command").get<std::string>();
            if (!kHandlers.count(command))
                throw wplab::DomainError("document has unknown command: " + command);
            const std::string fresh = make_document(command, doc.at("inputs"));
            std::cout << fresh;
            if (check) {
                const json fresh_doc = json::parse(fresh);
                if (fresh_doc.at("result").dump() != doc.at("result").dump()) {
                    std::cerr << "replay mismatch\n";
                    return 3;
                }
            }
        }
    } catch (const wplab::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.kind == wplab::Error::Kind::input ? 2 : 3;
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
