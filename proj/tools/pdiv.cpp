// pdiv: persistence diagram distances, divergences, projection,
// vectorization, and Vietoris-Rips persistence, as batch subcommands.
//
// Exit codes: 0 success (checkfn: all properties hold), 1 runtime failure or
// a falsified property, 2 input parse error, 3 invalid flags.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pdiv/pdiv.hpp"

namespace {

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << content;
}

pdiv::PersistenceDiagram load_diagram(const std::string& path) {
    try {
        const auto result = pdiv::parse_diagram(read_file(path));
        if (result.dropped_zero_persistence > 0)
            std::cerr << "warning: " << path << ": dropped " << result.dropped_zero_persistence
                      << " zero-persistence row(s)\n";
        return result.diagram;
    } catch (const pdiv::ParseError& e) {
        throw InputError(path + ": " + e.what());
    }
}

pdiv::Order parse_order(const std::string& text) {
    if (pdiv::is_infinity_token(text)) return pdiv::Order::infinity();
    const auto p = pdiv::parse_finite_double(text);
    if (!p || *p < 1.0) throw CLI::ValidationError("--p", "expected a real >= 1 or 'inf'");
    return pdiv::Order(*p);
}

// --f accepts a catalog name, name:param (e.g. truncate:0.5), or a .fn file
// of a tabulated function.
pdiv::TameFunction load_function(const std::string& spec, std::optional<double> infinity_clamp) {
    if (spec.size() > 3 && spec.substr(spec.size() - 3) == ".fn") {
        try {
            return pdiv::parse_tame_function(read_file(spec), std::filesystem::path(spec).stem().string());
        } catch (const pdiv::ParseError& e) {
            throw InputError(spec + ": " + e.what());
        } catch (const std::invalid_argument& e) {
            throw InputError(spec + ": " + e.what());
        }
    }
    std::string name = spec;
    std::optional<double> param;
    const std::size_t colon = spec.find(':');
    if (colon != std::string::npos) {
        name = spec.substr(0, colon);
        const auto value = pdiv::parse_finite_double(spec.substr(colon + 1));
        if (!value) throw CLI::ValidationError("--f", "malformed parameter in '" + spec + "'");
        param = *value;
    }
    try {
        return pdiv::builtin_function(name, param, infinity_clamp);
    } catch (const std::invalid_argument& e) {
        throw CLI::ValidationError("--f", e.what());
    }
}

void print_matching(const pdiv::DiagramMatching& matching, const pdiv::PersistenceDiagram& A,
                    const pdiv::PersistenceDiagram& B) {
    const auto a = A.expanded();
    const auto b = B.expanded();
    const auto show = [](const pdiv::DiagramPoint& p) {
        return "(" + pdiv::format_double(p.birth) + ", " +
               (p.has_infinite_death() ? "inf" : pdiv::format_double(p.death)) + ")";
    };
    for (const auto& [i, j] : matching.matched)
        std::cout << "match " << show(a[static_cast<std::size_t>(i)]) << " -> "
                  << show(b[static_cast<std::size_t>(j)]) << "\n";
    for (const auto i : matching.a_to_diagonal)
        std::cout << "diagonal " << show(a[static_cast<std::size_t>(i)]) << "\n";
    for (const auto& u : matching.b_unmatched)
        std::cout << "unmatched " << show(b[static_cast<std::size_t>(u.index)]) << " penalty "
                  << pdiv::to_string(u.penalty) << "\n";
}

struct CheckfnOptions {
    std::string f_spec;
    std::string p_text = "2";
    int samples = 10000;
    double range_max = 1000.0;
    int dimension_max = 6;
    std::uint64_t seed = 0;
};

int run_checkfn(const CheckfnOptions& opt) {
    const pdiv::TameFunction f = load_function(opt.f_spec, std::nullopt);
    const pdiv::Order p = parse_order(opt.p_text);
    bool all_ok = true;

    const auto report = [&](const std::string& label, const pdiv::CheckResult& r) {
        if (r.ok) {
            std::cout << label << ": ok\n";
            return;
        }
        all_ok = false;
        std::cout << label << ": violated at";
        for (double v : r.counterexample) std::cout << ' ' << pdiv::format_double(v);
        std::cout << "\n";
    };

    report("sub_diagonal", pdiv::check_sub_diagonal(f, opt.samples, opt.range_max, opt.seed));
    report("sub_additive", pdiv::check_sub_additive(f, opt.samples, opt.range_max, opt.seed));
    report("p_increasing(p=" + std::string(pdiv::to_string(p)) + ")",
           pdiv::check_p_increasing(f, p, opt.dimension_max, opt.samples, opt.range_max, opt.seed));
    return all_ok ? 0 : 1;
}

std::string dimension_suffix(int dim) { return "_dim" + std::to_string(dim) + ".dgm"; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"persistence diagram distances, divergences and vectorizations"};
    app.require_subcommand(1);

    // dist
    std::string dist_a, dist_b, dist_p = "2", dist_metric = "wasserstein";
    bool dist_verbose = false;
    auto* dist = app.add_subcommand("dist", "Wasserstein or bottleneck distance between two diagrams");
    dist->add_option("A", dist_a, "first .dgm file")->required();
    dist->add_option("B", dist_b, "second .dgm file")->required();
    dist->add_option("--p", dist_p, "order: real >= 1 or 'inf' (default 2)");
    dist->add_option("--metric", dist_metric, "wasserstein|bottleneck")
        ->check(CLI::IsMember({"wasserstein", "bottleneck"}));
    dist->add_flag("--verbose", dist_verbose, "also print the realizing matching");

    // div
    std::string div_a, div_b, div_f = "logistic_translated", div_p = "2";
    std::optional<double> div_clamp;
    bool div_verbose = false;
    auto* div = app.add_subcommand("div", "directed (f,p) divergence from A to B");
    div->add_option("A", div_a, "first .dgm file (mapped into B)")->required();
    div->add_option("B", div_b, "second .dgm file")->required();
    div->add_option("--f", div_f, "penalty function: name[:param] or a .fn file");
    div->add_option("--p", div_p, "order: real >= 1 or 'inf' (default 2)");
    div->add_option("--clamp-infinity", div_clamp, "finite stand-in for f at infinity (identity/scale)");
    div->add_flag("--verbose", div_verbose, "also print the realizing matching");

    // project
    std::string project_in, project_out;
    auto* project = app.add_subcommand("project", "remove all infinite points from a diagram");
    project->add_option("A", project_in, ".dgm file")->required();
    project->add_option("-o,--output", project_out, "output file (default: stdout)");

    // stats
    std::string stats_in, stats_measures = "mean,std,entropy";
    bool stats_csv = false;
    auto* stats = app.add_subcommand("stats", "bar-length statistics via the finite projection");
    stats->add_option("A", stats_in, ".dgm file")->required();
    stats->add_option("--measures", stats_measures, "comma list of mean,std,count,entropy");
    stats->add_flag("--csv", stats_csv, "emit 'name,dim,values...' rows instead of plain values");

    // rips
    std::string rips_in, rips_out;
    double rips_eps = 0.0;
    int rips_dim = 2;
    auto* rips = app.add_subcommand("rips", "Vietoris-Rips filtration of a point cloud");
    rips->add_option("points", rips_in, "CSV point cloud, one point per row")->required();
    rips->add_option("--max-eps", rips_eps, "largest simplex entry value")->required();
    rips->add_option("--max-dim", rips_dim, "largest simplex dimension (0..2, default 2)");
    rips->add_option("-o,--output", rips_out, "output .flt file (default: stdout)");

    // persistence
    std::string pers_in, pers_prefix;
    int pers_dim = -1;
    auto* pers = app.add_subcommand("persistence", "persistence diagrams of a filtration");
    pers->add_option("filtration", pers_in, ".flt file")->required();
    pers->add_option("--max-dim", pers_dim, "largest homology dimension (default: filtration dimension)");
    pers->add_option("-o,--output-prefix", pers_prefix, "output prefix (default: input path without .flt)");

    // checkfn
    CheckfnOptions checkfn_opt;
    auto* checkfn = app.add_subcommand("checkfn", "sampled property validators for a penalty function");
    checkfn->add_option("--f", checkfn_opt.f_spec, "function: name[:param] or a .fn file")->required();
    checkfn->add_option("--p", checkfn_opt.p_text, "order for the p-increasing check (default 2)");
    checkfn->add_option("--samples", checkfn_opt.samples, "samples per check (default 10000)");
    checkfn->add_option("--range-max", checkfn_opt.range_max, "sampling range upper end (default 1000)");
    checkfn->add_option("--dim-max", checkfn_opt.dimension_max, "largest vector length (default 6)");
    checkfn->add_option("--seed", checkfn_opt.seed, "seed for the sampled grids (default 0)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 3;
    }

    try {
        if (*dist) {
            const auto A = load_diagram(dist_a);
            const auto B = load_diagram(dist_b);
            const pdiv::Order p = parse_order(dist_p);
            const auto report = (dist_metric == "bottleneck" || p.is_infinite())
                                    ? pdiv::bottleneck_distance_report(A, B)
                                    : pdiv::wasserstein_distance_report(A, B, p);
            std::cout << pdiv::to_string(report.value) << "\n";
            if (dist_verbose) print_matching(report.matching, A, B);
        } else if (*div) {
            const auto A = load_diagram(div_a);
            const auto B = load_diagram(div_b);
            const pdiv::TameFunction f = load_function(div_f, div_clamp);
            const pdiv::Order p = parse_order(div_p);
            const auto report = pdiv::divergence(A, B, f, p);
            std::cout << pdiv::to_string(report.value) << "\n";
            if (div_verbose) {
                if (report.pseudo) std::cout << "# pseudo-divergence: f is not positive on positives\n";
                print_matching(report.matching, A, B);
            }
        } else if (*project) {
            const auto A = load_diagram(project_in);
            const std::string out = pdiv::serialize_diagram(pdiv::project_finite(A));
            if (project_out.empty())
                std::cout << out;
            else
                write_file(project_out, out);
        } else if (*stats) {
            const auto A = load_diagram(stats_in);
            std::vector<std::string> requested;
            std::stringstream ss(stats_measures);
            std::string item;
            while (std::getline(ss, item, ',')) requested.push_back(item);
            if (requested.empty()) throw CLI::ValidationError("--measures", "empty measure list");

            const pdiv::PersistenceDiagram finite = pdiv::project_finite(A);
            const pdiv::BarStats bar_stats = pdiv::basic_stats(finite);
            std::vector<std::string> values;
            for (const std::string& m : requested) {
                if (m == "mean")
                    values.push_back(pdiv::format_double(bar_stats.mean));
                else if (m == "std")
                    values.push_back(pdiv::format_double(bar_stats.std_dev));
                else if (m == "count")
                    values.push_back(std::to_string(bar_stats.count));
                else if (m == "entropy")
                    values.push_back(pdiv::format_double(pdiv::persistent_entropy(finite)));
                else
                    throw CLI::ValidationError("--measures", "unknown measure '" + m + "'");
            }
            if (stats_csv) {
                std::cout << pdiv::to_csv_row(pdiv::extend(pdiv::bar_stats_vectorization()), A) << "\n";
                std::cout << pdiv::to_csv_row(pdiv::extend(pdiv::entropy_vectorization()), A) << "\n";
            } else {
                for (std::size_t i = 0; i < values.size(); ++i) std::cout << (i ? "," : "") << values[i];
                std::cout << "\n";
            }
        } else if (*rips) {
            std::vector<std::vector<double>> points;
            try {
                points = pdiv::parse_point_cloud(read_file(rips_in));
            } catch (const pdiv::ParseError& e) {
                throw InputError(rips_in + ": " + e.what());
            }
            const auto filtration = pdiv::build_rips(points, rips_eps, rips_dim);
            const std::string out = pdiv::serialize_filtration(filtration);
            if (rips_out.empty())
                std::cout << out;
            else
                write_file(rips_out, out);
        } else if (*pers) {
            pdiv::Filtration filtration;
            try {
                filtration = pdiv::parse_filtration(read_file(pers_in));
            } catch (const pdiv::ParseError& e) {
                throw InputError(pers_in + ": " + e.what());
            } catch (const std::invalid_argument& e) {
                throw InputError(pers_in + ": " + e.what());
            }
            const int max_dim = pers_dim >= 0 ? pers_dim : std::max(0, filtration.max_dimension());
            const auto diagrams = pdiv::compute_persistence(filtration, max_dim);
            std::string prefix = pers_prefix;
            if (prefix.empty()) {
                prefix = pers_in;
                if (prefix.size() > 4 && prefix.substr(prefix.size() - 4) == ".flt")
                    prefix = prefix.substr(0, prefix.size() - 4);
            }
            for (const auto& diagram : diagrams) {
                const std::string path = prefix + dimension_suffix(*diagram.homology_dimension());
                write_file(path, pdiv::serialize_diagram(diagram));
                std::cout << path << "\n";
            }
        } else if (*checkfn) {
            return run_checkfn(checkfn_opt);
        }
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
