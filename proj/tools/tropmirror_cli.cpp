// Command-line surface for the tropical/mirror-support library.
//
// Exit codes: 0 success, 1 domain error (single line `ERROR <code>: <detail>`),
// 2 usage error. Output is deterministic: fixed orderings, fixed float format.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "tropmirror/coamoeba.hpp"
#include "tropmirror/field.hpp"
#include "tropmirror/hlgeometry.hpp"
#include "tropmirror/mirrorsupport.hpp"
#include "tropmirror/tropical.hpp"

using namespace tropmirror;

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

Field parse_field(const std::string& text) {
    if (text == "q" || text == "Q") return Field::rationals();
    if (text.rfind("fp:", 0) == 0) {
        try {
            return Field::prime(std::stoll(text.substr(3)));
        } catch (const std::invalid_argument&) {
            throw DomainError("parse_error", "invalid field spec '" + text + "'");
        } catch (const std::out_of_range&) {
            throw DomainError("parse_error", "invalid field spec '" + text + "'");
        }
    }
    throw DomainError("parse_error", "field must be 'q' or 'fp:P', got '" + text + "'");
}

std::vector<FieldElement> parse_elements(const std::string& csv, const Field& f) {
    std::vector<FieldElement> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(FieldElement::parse(item, f));
    return out;
}

mirror::LocalSystem parse_mu(const std::string& csv, const Field& f) {
    auto es = parse_elements(csv, f);
    if (es.size() != 5) throw DomainError("parse_error", "--mu needs exactly 5 holonomies");
    return mirror::LocalSystem({es[0], es[1], es[2], es[3], es[4]});
}

/// Stream writer honoring `--out -` as stdout.
struct OutFile {
    std::ofstream file;
    std::ostream* stream;

    explicit OutFile(const std::string& path) {
        if (path == "-") {
            stream = &std::cout;
        } else {
            file.open(path);
            if (!file) throw DomainError("io_error", "cannot open '" + path + "' for writing");
            stream = &file;
        }
    }
};

nlohmann::json string_array(const std::vector<FieldElement>& es) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& e : es) a.push_back(e.to_string());
    return a;
}

int cmd_balance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("io_error", "cannot read '" + path + "'");
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw DomainError("parse_error", std::string("invalid JSON: ") + e.what());
    }
    auto curve = curve_from_json(doc);
    auto residuals = check_balancing(curve);
    bool balanced = true;
    for (std::size_t v = 0; v < residuals.size(); ++v) {
        std::cout << "vertex " << v << ": " << nlohmann::json(residuals[v]).dump() << "\n";
        for (auto x : residuals[v]) balanced = balanced && x == 0;
    }
    std::cout << "balanced: " << (balanced ? "true" : "false") << "\n";
    return 0;
}

int cmd_coamoeba_sample(int n, int grid, double lambda, const std::string& out_path) {
    auto spec = coamoeba::Spec::make(n, lambda);
    auto cloud = coamoeba::sample_immersion(spec, grid);

    OutFile out(out_path);
    *out.stream << (n == 3 ? "theta1,theta2,theta3,q1,q2,q3" : "theta1,theta2,q1,q2") << "\n";
    for (const auto& s : cloud) {
        std::string row;
        for (double v : s.theta) row += fmt_double(v) + ",";
        for (std::size_t i = 0; i < s.covector.size(); ++i)
            row += fmt_double(s.covector[i]) + (i + 1 < s.covector.size() ? "," : "");
        *out.stream << row << "\n";
    }

    auto curve = n == 3 ? standard_four_valent() : standard_pants();
    double worst = 0.0;
    for (const auto& s : cloud) worst = std::max(worst, distance_to_curve(s.covector, curve));
    nlohmann::json summary;
    summary["max_hausdorff"] = worst;
    std::cout << summary.dump() << "\n";
    return 0;
}

int cmd_certify(int n, int grid, double tol, const std::string& out_path, int fd_samples,
                std::uint64_t seed) {
    auto spec = coamoeba::Spec::make(n, 1.0);
    auto report = coamoeba::certify_closed(spec, grid, tol);

    if (!out_path.empty()) {
        OutFile out(out_path);
        *out.stream << "point,residual\n";
        for (const auto& s : report.samples) {
            std::string pt;
            for (std::size_t i = 0; i < s.theta.size(); ++i)
                pt += fmt_double(s.theta[i]) + (i + 1 < s.theta.size() ? " " : "");
            *out.stream << pt << "," << fmt_double(s.asymmetry) << "\n";
        }
    }

    nlohmann::json summary;
    summary["max_curl"] = report.max_asymmetry;
    if (n == 3) {
        double cone_worst = 0.0;
        for (auto e : {coamoeba::Edge::E1, coamoeba::Edge::E2, coamoeba::Edge::E3,
                       coamoeba::Edge::E12, coamoeba::Edge::E13, coamoeba::Edge::E23})
            for (int a = 1; a <= grid; ++a)
                for (int c = 1; c < grid; ++c) {
                    coamoeba::ChartPoint q{e, double(a) / grid, 0.0, double(c) / grid};
                    cone_worst = std::max(cone_worst, coamoeba::cone_membership(spec, q).residual);
                }
        summary["max_cone_residual"] = cone_worst;
    }
    if (fd_samples > 0)
        summary["max_grad_mismatch"] = coamoeba::fd_gradient_mismatch(spec, fd_samples, seed);
    std::cout << summary.dump() << "\n";

    if (!report.pass)
        throw DomainError("certification_failed",
                          "max_curl " + fmt_double(report.max_asymmetry) + " exceeds tol " +
                              fmt_double(tol));
    return 0;
}

int cmd_front(double eps, int grid, const std::string& out_path) {
    OutFile out(out_path);
    *out.stream << "s,t,front_x,front_y,front_z,caustic\n";
    for (int i = 0; i < grid; ++i)
        for (int j = 0; j < grid; ++j) {
            double s = 2 * std::numbers::pi * i / grid;
            double t = 2 * std::numbers::pi * j / grid;
            try {
                auto f = hl::front_projection(s, t, eps);
                *out.stream << fmt_double(s) << "," << fmt_double(t) << "," << fmt_double(f[0])
                            << "," << fmt_double(f[1]) << "," << fmt_double(f[2]) << ",0\n";
            } catch (const DomainError& e) {
                if (e.code() != "caustic_point") throw;
                *out.stream << fmt_double(s) << "," << fmt_double(t) << ",,,,1\n";
            }
        }
    return 0;
}

int cmd_line(const mirror::LocalSystem& l) {
    for (int i = 1; i <= 3; ++i) {
        auto rel = mirror::support_relation(l, i);
        std::cout << "rel" << i << ": (" << rel.a_j.to_string() << ")*x" << rel.j << " + ("
                  << rel.a_k.to_string() << ")*x" << rel.k << " + (" << rel.c.to_string()
                  << ") = 0\n";
    }
    return 0;
}

int cmd_support(const mirror::LocalSystem& l, const Field& f, bool brute) {
    if (f.kind() != Field::Kind::prime)
        throw DomainError("bad_field", "support enumeration needs --field fp:P");
    auto pts = brute ? mirror::brute_force_support(l, f.modulus())
                     : mirror::support_points(l, f.modulus());
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& p : pts) arr.push_back({p[0], p[1], p[2]});
    std::cout << arr.dump() << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"tropical Lagrangian lifts, chain-link homology, and mirror support"};
    app.require_subcommand(1);

    std::string curve_path, field_text = "q", mu_text, plucker_text, alpha_text, z_text, out_path;
    std::string alpha_m0, alpha_l0;
    int n = 3, grid = 16, fd_samples = 0;
    double lambda = 1.0, tol = 1e-7, eps = 1.0;
    std::uint64_t seed = 0;
    bool brute = false;

    auto* balance = app.add_subcommand("balance", "check the balancing condition of a curve");
    balance->add_option("curve", curve_path, "curve JSON document")->required();

    auto* sample = app.add_subcommand("coamoeba-sample", "sample the Lagrangian lift point cloud");
    sample->add_option("--n", n, "coamoeba dimension (2 or 3)")->check(CLI::IsMember({2, 3}));
    sample->add_option("--grid", grid, "grid resolution");
    sample->add_option("--lambda", lambda, "primitive scale");
    sample->add_option("--out", out_path, "CSV output path, - for stdout")->required();

    auto* certify = app.add_subcommand("certify", "certify closedness of the lift 1-form");
    certify->add_option("--n", n, "coamoeba dimension (2 or 3)")->check(CLI::IsMember({2, 3}));
    certify->add_option("--grid", grid, "grid resolution");
    certify->add_option("--tol", tol, "max allowed mixed-partial asymmetry");
    certify->add_option("--out", out_path, "per-point CSV output path");
    certify->add_option("--fd-samples", fd_samples, "also check gradient vs finite differences");
    certify->add_option("--seed", seed, "seed for the random gradient check");

    auto* front = app.add_subcommand("front", "front projection of the Harvey-Lawson link");
    front->add_option("--epsilon", eps, "link radius parameter")->required();
    front->add_option("--grid", grid, "parameter grid resolution");
    front->add_option("--out", out_path, "CSV output path, - for stdout")->required();

    auto* curv = app.add_subcommand("curvature", "teardrop count of a local system");
    curv->add_option("--mu", mu_text, "5 comma-separated holonomies")->required();
    curv->add_option("--field", field_text, "q or fp:P");

    auto* plucker = app.add_subcommand("plucker", "Pluecker coordinates of a local system");
    plucker->add_option("--mu", mu_text, "5 comma-separated holonomies")->required();
    plucker->add_option("--field", field_text, "q or fp:P");

    auto* line = app.add_subcommand("line", "the three support relations of a local system");
    line->add_option("--mu", mu_text, "5 comma-separated holonomies")->required();
    line->add_option("--field", field_text, "q or fp:P");

    auto* localsystem = app.add_subcommand("localsystem", "invert the Pluecker embedding");
    localsystem->add_option("--plucker", plucker_text, "p12,p13,p14,p23,p24,p34")->required();
    localsystem->add_option("--field", field_text, "q or fp:P");

    auto* support = app.add_subcommand("support", "Floer-theoretic support over F_p");
    support->add_option("--mu", mu_text, "5 comma-separated holonomies")->required();
    support->add_option("--field", field_text, "fp:P");
    support->add_flag("--brute", brute, "use the exhaustive oracle instead of linear solving");

    auto* koszul = app.add_subcommand("koszul", "cohomology ranks of the conormal complex");
    koszul->add_option("--alpha", alpha_text, "comma-separated brane holonomies")->required();
    koszul->add_option("--z", z_text, "comma-separated test holonomies")->required();
    koszul->add_option("--field", field_text, "q or fp:P");

    auto* dehn = app.add_subcommand("dehn", "filling slope of a smoothing 1-form");
    dehn->add_option("--alpha-m0", alpha_m0, "value on m_0 (rational multiple of eps)")->required();
    dehn->add_option("--alpha-l0", alpha_l0, "value on l_0 (rational multiple of eps)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*balance) return cmd_balance(curve_path);
        if (*sample) return cmd_coamoeba_sample(n, grid, lambda, out_path);
        if (*certify) return cmd_certify(n, grid, tol, out_path, fd_samples, seed);
        if (*front) return cmd_front(eps, grid, out_path);

        Field f = parse_field(field_text);
        if (*curv) {
            std::cout << mirror::curvature(parse_mu(mu_text, f)).to_string() << "\n";
            return 0;
        }
        if (*plucker) {
            auto p = mirror::pluecker_embed(parse_mu(mu_text, f));
            std::cout << string_array({p.phi.begin(), p.phi.end()}).dump() << "\n";
            return 0;
        }
        if (*line) return cmd_line(parse_mu(mu_text, f));
        if (*localsystem) {
            auto es = parse_elements(plucker_text, f);
            if (es.size() != 6) throw DomainError("parse_error", "--plucker needs 6 coordinates");
            mirror::PlueckerPoint p;
            std::copy(es.begin(), es.end(), p.phi.begin());
            auto l = mirror::localsystem_from_line(p);
            auto mu = l.holonomies();
            std::cout << string_array({mu.begin(), mu.end()}).dump() << "\n";
            return 0;
        }
        if (*support) return cmd_support(parse_mu(mu_text, f), f, brute);
        if (*koszul) {
            auto ranks = mirror::koszul_hf(parse_elements(alpha_text, f), parse_elements(z_text, f));
            std::cout << nlohmann::json(ranks).dump() << "\n";
            return 0;
        }
        if (*dehn) {
            hl::FillingData data{rational_from_string(alpha_m0), rational_from_string(alpha_l0)};
            std::cout << hl::filling_slope(data).to_string() << "\n";
            return 0;
        }
    } catch (const DomainError& e) {
        std::cout << "ERROR " << e.code() << ": " << e.detail() << "\n";
        return 1;
    }
    return 2;
}
