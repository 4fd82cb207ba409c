// Command-line front end: every computation in the library is reachable from
// here, emitting deterministic JSON (or CSV) reports.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qpt/bounds.hpp"
#include "qpt/operator_oracle.hpp"
#include "qpt/ranktest.hpp"
#include "qpt/report.hpp"
#include "qpt/schmidt.hpp"
#include "qpt/ttns.hpp"
#include "qpt/verify.hpp"
#include "qpt/wss.hpp"

namespace {

struct GlobalOpts {
    std::string arithmetic = "float";
    std::uint64_t seed = 20240901;
    int threads = 1;
    std::string format = "json";
    unsigned long long cap_partitions = qpt::kDefaultPartitionCap;
    unsigned long long cap_words = qpt::kDefaultWordCap;
};

void emit(const qpt::TestReport& report, const GlobalOpts& g) {
    std::cout << (g.format == "csv" ? report.to_csv() : report.to_json());
}

qpt::Rational parse_rational(const std::string& text) {
    if (text.find('/') != std::string::npos) {
        qpt::Rational q(text);
        q.canonicalize();
        return q;
    }
    const auto dot = text.find('.');
    if (dot == std::string::npos) return qpt::Rational(text);
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    std::string den = "1" + std::string(text.size() - dot - 1, '0');
    qpt::Rational q(digits + "/" + den);
    q.canonicalize();
    return q;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw qpt::domain_error("cannot read file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw qpt::domain_error("cannot write file: " + path);
    out << text;
    if (!out) throw qpt::domain_error("write failed: " + path);
}

std::vector<double> spectrum_file_probs(const std::string& path) {
    const nlohmann::json j = nlohmann::json::parse(read_file(path));
    const nlohmann::json& arr = j.is_array() ? j : j.at("probs");
    std::vector<double> p;
    for (const auto& v : arr) p.push_back(v.get<double>());
    return p;
}

void run_beta(const GlobalOpts& g, double eps, int r, int d, bool oracle, int oracle_points,
              long long oracle_samples) {
    qpt::TestReport rep("beta");
    rep.set_arithmetic_mode("float");
    rep.set_seed(g.seed);
    rep.set_param("epsilon", eps);
    rep.set_param("r", static_cast<long long>(r));
    rep.set_param("d", static_cast<long long>(d));
    const qpt::BetaResult res = qpt::beta_closed_form(eps, r, d);
    rep.set_result("beta", res.beta);
    rep.set_result("z", res.z);
    rep.set_result("argmin_term", qpt::beta_argmin_name(res.argmin_term));
    rep.set_result("witness_k", res.witness_k);
    rep.set_result("witness_q", res.witness_q);
    rep.set_result("witness_spectrum", res.witness_spectrum.probs);
    rep.add_note("generalized binomial: falling factorial, m terms over m!");
    if (oracle) {
        qpt::OracleParams op;
        op.q_points = oracle_points;
        op.random_samples = oracle_samples;
        op.seed = g.seed;
        const qpt::BetaResult nu = qpt::beta_numeric_oracle(eps, r, d, op);
        rep.set_result("beta_oracle", nu.beta);
        rep.set_result("oracle_abs_diff", std::abs(nu.beta - res.beta));
    }
    emit(rep, g);
}

void run_figure(const GlobalOpts& g, const std::string& r_list, int d, int points,
                const std::string& out_path) {
    std::vector<int> rs;
    std::stringstream ss(r_list);
    for (std::string tok; std::getline(ss, tok, ',');) rs.push_back(std::stoi(tok));
    if (rs.empty()) throw qpt::domain_error("figure requires a non-empty r list");
    if (points < 1) throw qpt::domain_error("figure requires points >= 1");
    std::string csv = "epsilon,r,d,beta\n";
    for (int r : rs) {
        if (r < 1 || r >= d) throw qpt::domain_error("figure requires 1 <= r < d");
        const double eps_max = 1.0 - static_cast<double>(r) / d;
        for (int i = 1; i <= points; ++i) {
            const double eps = eps_max * i / points;
            const double beta = qpt::beta_closed_form(eps, r, d).beta;
            csv += qpt::format_double_17(eps) + "," + std::to_string(r) + "," + std::to_string(d) +
                   "," + qpt::format_double_17(beta) + "\n";
        }
    }
    write_file(out_path, csv);
    qpt::TestReport rep("figure");
    rep.set_seed(g.seed);
    rep.set_param("d", static_cast<long long>(d));
    rep.set_param("points", static_cast<long long>(points));
    rep.set_param("r_list", r_list);
    rep.set_param("out", out_path);
    rep.set_result("rows", static_cast<long long>(rs.size()) * points);
    emit(rep, g);
}

void run_accept(const GlobalOpts& g, const std::string& spectrum_file, const std::string& hard,
                int uniform_d, int n_copies, int r, const std::string& method, long long samples) {
    qpt::TestReport rep("accept");
    rep.set_arithmetic_mode(g.arithmetic);
    rep.set_seed(g.seed);
    rep.set_param("copies", static_cast<long long>(n_copies));
    rep.set_param("r", static_cast<long long>(r));
    rep.set_param("method", method);

    const bool rational = g.arithmetic == "rational";
    if (!hard.empty()) {
        // eps,n,d : product hard instance, acceptance = single^(n-1)
        std::stringstream ss(hard);
        std::string eps_s, n_s, d_s;
        if (!std::getline(ss, eps_s, ',') || !std::getline(ss, n_s, ',') || !std::getline(ss, d_s, ','))
            throw qpt::domain_error("--hard-instance expects eps,n,d");
        const int n = std::stoi(n_s), d = std::stoi(d_s);
        rep.set_param("hard_instance", hard);
        if (method == "mc") {
            const qpt::HardInstanceMc mc = qpt::ttns_accept_hard_mc(
                std::stod(eps_s), n, d, r, n_copies, samples, g.seed, g.threads);
            rep.set_param("samples", samples);
            rep.set_result("value", mc.product.value);
            rep.set_result("stderr", mc.product.stderr_);
            rep.set_result("single_edge", mc.single_edge.value);
            rep.set_result("single_edge_stderr", mc.single_edge.stderr_);
        } else if (rational) {
            const qpt::Rational eps = parse_rational(eps_s);
            const qpt::RationalSpectrum spec = qpt::hard_instance_spectrum<qpt::Rational>(eps, n, d);
            const qpt::Rational single = (method == "exact")
                                             ? qpt::accept_prob_rank_test_exact(spec, n_copies, r, g.cap_partitions)
                                             : qpt::accept_prob_rank_test_brute(spec, n_copies, r, g.cap_words);
            qpt::Rational value(1);
            for (int e = 0; e < n - 1; ++e) value *= single;
            rep.set_result("single_edge", qpt::to_string(single));
            rep.set_result("value", qpt::to_string(value));
            rep.set_result("value_float", qpt::to_double(value));
        } else {
            const qpt::HardInstanceAccept acc =
                (method == "exact")
                    ? qpt::ttns_accept_hard_exact(std::stod(eps_s), n, d, r, n_copies, g.cap_partitions)
                    : qpt::ttns_accept_hard_brute(std::stod(eps_s), n, d, r, n_copies, g.cap_words);
            rep.set_result("single_edge", acc.single_edge);
            rep.set_result("value", acc.value);
        }
        emit(rep, g);
        return;
    }

    std::vector<double> probs;
    if (uniform_d > 0) {
        rep.set_param("uniform_d", static_cast<long long>(uniform_d));
        probs.assign(static_cast<std::size_t>(uniform_d), 1.0 / uniform_d);
    } else if (!spectrum_file.empty()) {
        rep.set_param("spectrum_file", spectrum_file);
        probs = spectrum_file_probs(spectrum_file);
    } else {
        throw qpt::domain_error("accept needs --spectrum-file, --hard-instance, or --uniform");
    }

    if (method == "mc") {
        const qpt::McEstimate est = qpt::sample_lds_mc(qpt::Spectrum::make(probs), n_copies, r,
                                                       samples, g.seed, g.threads);
        rep.set_param("samples", samples);
        rep.set_result("value", est.value);
        rep.set_result("stderr", est.stderr_);
    } else if (rational && uniform_d > 0) {
        const qpt::RationalSpectrum spec = qpt::RationalSpectrum::uniform(uniform_d);
        const qpt::Rational v = (method == "exact")
                                    ? qpt::accept_prob_rank_test_exact(spec, n_copies, r, g.cap_partitions)
                                    : qpt::accept_prob_rank_test_brute(spec, n_copies, r, g.cap_words);
        rep.set_result("value", qpt::to_string(v));
        rep.set_result("value_float", qpt::to_double(v));
    } else {
        const qpt::Spectrum spec = qpt::Spectrum::make(probs);
        const double v = (method == "exact")
                             ? qpt::accept_prob_rank_test_exact(spec, n_copies, r, g.cap_partitions)
                             : qpt::accept_prob_rank_test_brute(spec, n_copies, r, g.cap_words);
        rep.set_result("value", v);
    }
    emit(rep, g);
}

void run_ttns(const GlobalOpts& g, const std::string& action, const std::string& tree_file,
              const std::string& state_file, int r, double tol, double eps, int d,
              const std::string& out_path) {
    qpt::TestReport rep("ttns." + action);
    rep.set_seed(g.seed);
    const qpt::Tree tree = qpt::tree_from_json(read_file(tree_file));
    rep.set_param("tree", tree_file);

    if (action == "hardstate") {
        rep.set_param("epsilon", eps);
        rep.set_param("d", static_cast<long long>(d));
        const qpt::TreeState state = qpt::hard_instance_state(tree, eps, d);
        if (!out_path.empty()) {
            write_file(out_path, qpt::tree_state_to_json(state));
            rep.set_param("out", out_path);
        }
        rep.set_result("total_dim", static_cast<long long>(state.total_dim()));
        rep.set_result("spectrum", qpt::hard_instance_spectrum<double>(eps, tree.n, d).probs);
        emit(rep, g);
        return;
    }

    const qpt::TreeState state = qpt::tree_state_from_json(read_file(state_file));
    rep.set_param("state", state_file);
    rep.set_param("r", static_cast<long long>(r));
    if (action == "check") {
        rep.set_param("tol", tol);
        const qpt::TtnsCheck check = qpt::is_ttns(state, tree, r, tol);
        rep.set_result("is_ttns", check.ok);
        std::vector<double> ranks(check.edge_ranks.begin(), check.edge_ranks.end());
        rep.set_result("edge_ranks", ranks);
        emit(rep, g);
        return;
    }
    if (action != "approx") throw qpt::domain_error("ttns action must be approx, check, or hardstate");
    const qpt::TtnsApproxResult res = qpt::faithful_ttns_approx(state, tree, r);
    if (!out_path.empty()) {
        write_file(out_path, qpt::tree_state_to_json(res.approx));
        rep.set_param("out", out_path);
    }
    rep.set_result("tail_sum", res.certificate.tail_sum);
    rep.set_result("overlap_bound", res.certificate.overlap_bound);
    rep.set_result("bound_vacuous", res.certificate.bound_vacuous);
    rep.set_result("measured_overlap", res.certificate.measured_overlap);
    rep.set_result("residual_sq", res.certificate.residual_sq);
    rep.set_result("edge_tails", res.certificate.edge_tails);
    rep.add_note("overlap bound is vacuous when the tail sum exceeds 1; reported, not asserted");
    emit(rep, g);
}

int run_verify_cmd(const GlobalOpts& g, const std::string& suite) {
    const std::vector<qpt::SuiteResult> results = qpt::run_verify(suite, g.seed);
    qpt::TestReport rep("verify");
    rep.set_seed(g.seed);
    rep.set_param("suite", suite);
    bool all_ok = true;
    long long passed = 0, failed = 0;
    for (const qpt::SuiteResult& r : results) {
        std::cout << r.name << ": " << r.passed << " passed, " << r.failed << " failed\n";
        for (const std::string& f : r.failures) std::cout << "  FAIL " << f << "\n";
        rep.set_result(r.name + ".passed", static_cast<long long>(r.passed));
        rep.set_result(r.name + ".failed", static_cast<long long>(r.failed));
        passed += r.passed;
        failed += r.failed;
        if (r.failed > 0) all_ok = false;
    }
    rep.set_result("total_passed", passed);
    rep.set_result("total_failed", failed);
    emit(rep, g);
    return all_ok ? 0 : 4;
}

void run_copies(const GlobalOpts& g, const std::string& kind, int r, double eps, int n, int d,
                double target) {
    qpt::TestReport rep("copies." + kind);
    rep.set_seed(g.seed);
    rep.set_param("r", static_cast<long long>(r));
    rep.set_param("epsilon", eps);
    rep.set_param("target", target);
    if (kind == "rank") {
        const int dim = d > 0 ? d : 2 * r + 1;
        rep.set_param("d", static_cast<long long>(dim));
        rep.set_result("copies", qpt::sr_copy_threshold(r, eps, dim, target, g.cap_partitions));
        rep.add_note("witness spectrum: (1-delta^2, uniform tail); instantiated constants, not tight theoretical constants");
    } else if (kind == "tree") {
        rep.set_param("n", static_cast<long long>(n));
        rep.set_result("upper_copies", qpt::ttns_copy_upper(n, r, eps, target));
        const qpt::LbThreshold lb = qpt::lb_copy_threshold(n, r, eps);
        rep.set_result("lb_threshold", lb.value);
        rep.set_result("lb_alpha_n", lb.alpha_n);
        rep.set_result("lb_hypotheses_ok", lb.hypotheses_ok);
        rep.add_note("alpha(n) uses the natural logarithm");
        rep.add_note("single-edge witness at distance eps/sqrt(2(n-1)); instantiated constants, not tight theoretical constants");
    } else if (kind == "fewcopy") {
        const qpt::FewCopyComplexity fc = qpt::copy_complexity_few_copy(eps, r, target);
        rep.set_result("rounds", fc.rounds);
        rep.set_result("copies", fc.total_copies);
        rep.set_result("per_round_beta", fc.per_round_beta);
        if (n > 0) {
            rep.set_param("n", static_cast<long long>(n));
            const qpt::TreeFewCopyBounds b = qpt::few_copy_tree_bounds(n, r, eps);
            rep.set_result("tree_upper", b.upper.get_str());
            rep.set_result("tree_lower", b.lower.get_str());
            rep.set_result("tree_c_upper", b.c_upper);
            rep.set_result("tree_c_lower", b.c_lower);
            rep.add_note("tree bounds carry instantiated constants, not tight theoretical constants");
        }
    } else {
        throw qpt::domain_error("copies kind must be rank, tree, or fewcopy");
    }
    emit(rep, g);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rank / Schmidt-rank / TTNS property-test calculations"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--arithmetic", g.arithmetic)->check(CLI::IsMember({"rational", "float"}));
    app.add_option("--seed", g.seed);
    app.add_option("--threads", g.threads)->check(CLI::PositiveNumber);
    app.add_option("--format", g.format)->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--cap-partitions", g.cap_partitions);
    app.add_option("--cap-words", g.cap_words);

    double eps = 0, tol = qpt::kSchmidtZeroTol, target = 1.0 / 3.0;
    int r = 1, d = 0, n = 0, n_copies = 1, points = 50, oracle_points = 2048;
    long long samples = 100000, oracle_samples = 10000;
    bool oracle = false;
    std::string r_list = "1,2,3,4,5", out_path, spectrum_file, hard_instance, method = "exact";
    std::string tree_file, state_file, suite = "all", ttns_action;
    int uniform_d = 0;

    CLI::App* cmd_beta = app.add_subcommand("beta", "closed-form (r+1)-copy soundness");
    cmd_beta->add_option("--eps", eps)->required();
    cmd_beta->add_option("--r", r)->required();
    cmd_beta->add_option("--d", d)->required();
    cmd_beta->add_flag("--oracle", oracle);
    cmd_beta->add_option("--oracle-points", oracle_points);
    cmd_beta->add_option("--oracle-samples", oracle_samples);

    CLI::App* cmd_figure = app.add_subcommand("figure", "soundness curve dataset (CSV)");
    cmd_figure->add_option("--r-list", r_list);
    cmd_figure->add_option("--d", d)->required();
    cmd_figure->add_option("--points", points);
    cmd_figure->add_option("--out", out_path)->required();

    CLI::App* cmd_accept = app.add_subcommand("accept", "rank-test acceptance probability");
    cmd_accept->add_option("--spectrum-file", spectrum_file);
    cmd_accept->add_option("--hard-instance", hard_instance);
    cmd_accept->add_option("--uniform", uniform_d);
    cmd_accept->add_option("--copies,--N", n_copies)->required();
    cmd_accept->add_option("--r", r)->required();
    cmd_accept->add_option("--method", method)->check(CLI::IsMember({"exact", "brute", "mc"}));
    cmd_accept->add_option("--samples", samples);

    CLI::App* cmd_ttns = app.add_subcommand("ttns", "tree tensor network operations");
    cmd_ttns->add_option("action", ttns_action)->required()->check(CLI::IsMember({"approx", "check", "hardstate"}));
    cmd_ttns->add_option("--tree", tree_file)->required();
    cmd_ttns->add_option("--state", state_file);
    cmd_ttns->add_option("--r", r);
    cmd_ttns->add_option("--tol", tol);
    cmd_ttns->add_option("--eps", eps);
    cmd_ttns->add_option("--d", d);
    cmd_ttns->add_option("--out", out_path);

    CLI::App* cmd_verify = app.add_subcommand("verify", "run module invariant suites");
    cmd_verify->add_option("--suite", suite);

    CLI::App* cmd_copies = app.add_subcommand("copies", "copy-complexity calculators");
    std::string copies_kind;
    cmd_copies->add_option("kind", copies_kind)->required()->check(CLI::IsMember({"rank", "tree", "fewcopy"}));
    cmd_copies->add_option("--r", r)->required();
    cmd_copies->add_option("--eps", eps)->required();
    cmd_copies->add_option("--n", n);
    cmd_copies->add_option("--d", d);
    cmd_copies->add_option("--target", target);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (cmd_beta->parsed()) run_beta(g, eps, r, d, oracle, oracle_points, oracle_samples);
        else if (cmd_figure->parsed()) run_figure(g, r_list, d, points, out_path);
        else if (cmd_accept->parsed())
            run_accept(g, spectrum_file, hard_instance, uniform_d, n_copies, r, method, samples);
        else if (cmd_ttns->parsed())
            run_ttns(g, ttns_action, tree_file, state_file, r, tol, eps, d, out_path);
        else if (cmd_verify->parsed())
            return run_verify_cmd(g, suite);
        else if (cmd_copies->parsed())
            run_copies(g, copies_kind, r, eps, n, d, target);
    } catch (const qpt::domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const qpt::cap_exceeded& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return 3;
    } catch (const qpt::verification_error& e) {
        std::cerr << "verification failure: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
