#include <algorithm>
#include <atomic>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "unclelab/injectivity.hpp"
#include "unclelab/io.hpp"
#include "unclelab/models.hpp"
#include "unclelab/rng.hpp"
#include "unclelab/transfer.hpp"
#include "unclelab/uncle.hpp"

namespace ul = unclelab;
using nlohmann::json;

namespace {

std::pair<int, int> parse_n_range(const std::string& s) {
    auto dots = s.find("..");
    if (dots == std::string::npos)
        throw ul::ParseError("--n-range expects a..b, got '" + s + "'");
    try {
        int lo = std::stoi(s.substr(0, dots));
        int hi = std::stoi(s.substr(dots + 2));
        if (lo < 1 || hi < lo) throw ul::ParseError("--n-range bounds out of order: " + s);
        return {lo, hi};
    } catch (const std::logic_error&) {
        throw ul::ParseError("--n-range expects integers a..b, got '" + s + "'");
    }
}

std::vector<double> parse_eps_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stod(item));
        } catch (const std::logic_error&) {
            throw ul::ParseError("--eps expects comma-separated numbers, got '" + item + "'");
        }
    }
    if (out.empty()) throw ul::ParseError("--eps list is empty");
    return out;
}

// Every report embeds the run configuration and the format version.
json report_shell(const ul::RunConfig& config) {
    return json{{"format", ul::kFormatVersion}, {"config", ul::to_json(config)}};
}

std::string out_path(const ul::RunConfig& config, const std::string& name) {
    if (config.out_dir.empty()) return name;
    return config.out_dir + "/" + name;
}

void run_indexed_jobs(int jobs, int workers, const std::function<void(int)>& body) {
    if (workers <= 0)
        workers = std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, jobs);
    if (workers <= 1) {
        for (int i = 0; i < jobs; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < jobs; i = next.fetch_add(1)) body(i);
        });
    for (std::thread& t : pool) t.join();
}

json tensor_report(const ul::MpsTensor& t, double tol) {
    json rep;
    rep["d"] = t.d();
    rep["rows"] = t.rows();
    rep["cols"] = t.cols();
    bool inj = ul::is_injective(t, tol);
    rep["injective"] = inj;
    if (t.is_square()) {
        auto idx = ul::injectivity_index(t, 0, tol);
        if (idx)
            rep["injectivity_index"] = *idx;
        else
            rep["injectivity_index"] = nullptr;
        ul::TransferOperator e = ul::transfer_operator(t, t);
        rep["rho"] = ul::spectral_radius(e);
        bool standard = ul::is_standard_form(t);
        rep["standard_form"] = standard;
        if (standard) {
            ul::CanonicalData data = ul::fixed_points(t);
            rep["leading_eigenvalue"] = {data.leading_eigenvalue.real(),
                                         data.leading_eigenvalue.imag()};
            rep["tr_lambda"] = data.trace_lambda;
        }
    }
    return rep;
}

int cmd_inspect(ul::RunConfig config) {
    json j = ul::load_json(config.inputs[0]);
    json rep = report_shell(config);
    if (j.contains("blocks")) {
        ul::BlockMps c = ul::json_to_blocks(j);
        json blocks = json::array();
        for (int b = 0; b < c.block_count(); ++b) {
            json br = tensor_report(c.block(b), config.tol);
            std::cout << "block " << b << ": injective: "
                      << (br["injective"].get<bool>() ? "true" : "false");
            if (br.contains("rho"))
                std::cout << ", rho=" << ul::format_float(br["rho"].get<double>());
            if (br.contains("tr_lambda"))
                std::cout << ", tr Lambda=" << ul::format_float(br["tr_lambda"].get<double>());
            std::cout << "\n";
            blocks.push_back(std::move(br));
        }
        rep["blocks"] = blocks;
        ul::MpsTensor full = c.full_tensor();
        bool full_inj = ul::is_injective(full, config.tol);
        rep["full_tensor"] = {{"injective", full_inj},
                              {"rank", ul::numerical_rank(ul::tensor_matrix(full), config.tol)},
                              {"full_rank", full.rows() * full.cols()}};
        std::cout << "full tensor injective: " << (full_inj ? "true" : "false")
                  << (full_inj ? "" : " (block-diagonal span)") << "\n";
    } else {
        ul::MpsTensor t = ul::json_to_tensor(j);
        json tr = tensor_report(t, config.tol);
        std::cout << "tensor: injective: " << (tr["injective"].get<bool>() ? "true" : "false");
        if (tr.contains("rho"))
            std::cout << ", rho=" << ul::format_float(tr["rho"].get<double>());
        if (tr.contains("standard_form"))
            std::cout << ", standard form: "
                      << (tr["standard_form"].get<bool>() ? "true" : "false");
        std::cout << "\n";
        rep["tensor"] = std::move(tr);
    }
    if (!config.out_dir.empty()) ul::save_json(out_path(config, "inspect.json"), rep);
    return 0;
}

int cmd_uncle(ul::RunConfig config) {
    ul::BlockMps c = ul::load_blocks(config.inputs[0]);
    ul::Perturbation p;
    if (config.inputs.size() > 1) {
        p = ul::load_perturbation(config.inputs[1]);
    } else {
        p = ul::random_injective_perturbation(c, config.seed);
        std::cout << "perturbation: seeded draw (seed " << config.seed << ")\n";
    }
    ul::ProjectorTerm term = ul::uncle_local_term(c, p, config.sites, config.tol);
    std::vector<double> eps =
        config.eps_list.empty() ? std::vector<double>{1e-1, 1e-2, 1e-3, 1e-4}
                                : config.eps_list;
    std::vector<ul::ProbeRow> probe =
        ul::limit_convergence_probe(c, p, config.sites, eps, config.tol);
    std::vector<double> lx, ly;
    for (const ul::ProbeRow& row : probe)
        if (row.eps > 0.0 && row.distance > 0.0) {
            lx.push_back(std::log10(row.eps));
            ly.push_back(std::log10(row.distance));
        }
    ul::LineFit fit = ul::fit_line(lx, ly);
    std::cout << "uncle term: support " << term.support << ", local dim "
              << term.local_dim << ", complement rank "
              << ul::format_float(term.matrix.trace().real()) << "\n";
    std::cout << "convergence slope: " << ul::format_float(fit.slope) << "\n";

    json term_json = ul::term_to_json(term);
    term_json["config"] = ul::to_json(config);
    ul::save_json(out_path(config, "term.json"), term_json);
    json pert_json = ul::perturbation_to_json(p);
    pert_json["config"] = ul::to_json(config);
    ul::save_json(out_path(config, "perturbation.json"), pert_json);
    if (config.format == "csv") {
        std::ostringstream csv;
        csv << "eps,distance\n";
        for (const ul::ProbeRow& row : probe)
            csv << ul::format_float(row.eps) << ',' << ul::format_float(row.distance) << '\n';
        ul::save_text(out_path(config, "probe.csv"), csv.str());
    } else {
        json rep = report_shell(config);
        rep["slope"] = fit.slope;
        json rows = json::array();
        for (const ul::ProbeRow& row : probe)
            rows.push_back({{"eps", row.eps}, {"distance", row.distance}});
        rep["probe"] = rows;
        ul::save_json(out_path(config, "probe.json"), rep);
    }
    return 0;
}

int cmd_spectrum(ul::RunConfig config) {
    ul::ProjectorTerm term = ul::load_term(config.inputs[0]);
    ul::BoundaryKind boundary = ul::parse_boundary(config.boundary);
    json term_fingerprint = ul::term_to_json(term);
    std::vector<ul::SpectrumReport> reports;
    for (int n = config.n_lo; n <= config.n_hi; ++n) {
        ul::ChainOperator h = ul::assemble(term, n, boundary);
        int count = config.count;
        if (h.dim() < count) {
            std::cerr << "warning: --count " << count << " clamped to dimension "
                      << h.dim() << " at n=" << n << "\n";
            count = static_cast<int>(h.dim());
        }
        std::string key;
        if (auto dir = std::getenv("UNCLE_LAB_CACHE"); dir != nullptr) {
            json payload = {{"term", term_fingerprint},
                            {"n", n},
                            {"boundary", config.boundary},
                            {"count", count}};
            key = ul::cache_key(payload.dump());
            if (auto hit = ul::cache_get(key)) {
                json cached = json::parse(*hit);
                ul::SpectrumReport rep;
                rep.sites = cached.at("n").get<int>();
                rep.boundary = boundary;
                rep.method = cached.at("method").get<std::string>();
                std::vector<double> vals =
                    cached.at("eigenvalues").get<std::vector<double>>();
                std::vector<double> res = cached.at("residuals").get<std::vector<double>>();
                rep.values = Eigen::Map<const ul::RealVector>(
                    vals.data(), static_cast<Eigen::Index>(vals.size()));
                rep.residuals = Eigen::Map<const ul::RealVector>(
                    res.data(), static_cast<Eigen::Index>(res.size()));
                rep.kernel_dim = cached.at("kernel_dim").get<int>();
                rep.gap = cached.at("gap").get<double>();
                rep.tol = cached.at("tol").get<double>();
                reports.push_back(std::move(rep));
                continue;
            }
        }
        ul::SpectrumReport rep = ul::low_spectrum(h, count);
        if (!key.empty()) ul::cache_put(key, ul::spectrum_to_json(rep).dump());
        reports.push_back(std::move(rep));
    }
    for (const ul::SpectrumReport& rep : reports)
        std::cout << "n=" << rep.sites << " method=" << rep.method
                  << " kernel_dim=" << rep.kernel_dim
                  << " gap=" << ul::format_float(rep.gap) << "\n";
    if (config.format == "csv") {
        ul::save_text(out_path(config, "spectrum.csv"), ul::spectrum_csv(reports));
    } else {
        json rep = report_shell(config);
        json rows = json::array();
        for (const ul::SpectrumReport& r : reports) rows.push_back(ul::spectrum_to_json(r));
        rep["spectra"] = rows;
        ul::save_json(out_path(config, "spectrum.json"), rep);
    }
    return 0;
}

int sweep_ghz_gapless(ul::RunConfig config) {
    if (config.n_lo == 0) {
        config.n_lo = 6;
        config.n_hi = 12;
    }
    ul::BlockMps c = ul::ghz_tensor();
    ul::Perturbation p = ul::random_injective_perturbation(c, config.seed);
    ul::ProjectorTerm uncle = ul::uncle_local_term(c, p, 3, config.tol);
    ul::ProjectorTerm parent = ul::parent_local_term(c, 2, config.tol);
    int jobs = config.n_hi - config.n_lo + 1;
    std::vector<double> uncle_gap(static_cast<size_t>(jobs)),
        parent_gap(static_cast<size_t>(jobs));
    run_indexed_jobs(jobs, config.workers, [&](int i) {
        int n = config.n_lo + i;
        uncle_gap[static_cast<size_t>(i)] =
            ul::low_spectrum(ul::assemble(uncle, n, ul::BoundaryKind::Periodic), 6).gap;
        parent_gap[static_cast<size_t>(i)] =
            ul::low_spectrum(ul::assemble(parent, n, ul::BoundaryKind::Periodic), 6).gap;
    });
    std::vector<double> lx, ly;
    std::ostringstream csv;
    csv << "n,parent_gap,uncle_gap\n";
    for (int i = 0; i < jobs; ++i) {
        int n = config.n_lo + i;
        csv << n << ',' << ul::format_float(parent_gap[static_cast<size_t>(i)]) << ','
            << ul::format_float(uncle_gap[static_cast<size_t>(i)]) << '\n';
        lx.push_back(std::log(static_cast<double>(n)));
        ly.push_back(std::log(uncle_gap[static_cast<size_t>(i)]));
    }
    ul::LineFit fit = ul::fit_line(lx, ly);
    ul::save_text(out_path(config, "gaps.csv"), csv.str());
    json rep = report_shell(config);
    rep["bundle"] = "ghz-gapless";
    rep["uncle_gap_slope"] = fit.slope;
    json rows = json::array();
    for (int i = 0; i < jobs; ++i)
        rows.push_back({{"n", config.n_lo + i},
                        {"parent_gap", parent_gap[static_cast<size_t>(i)]},
                        {"uncle_gap", uncle_gap[static_cast<size_t>(i)]}});
    rep["gaps"] = rows;
    ul::save_json(out_path(config, "gaps.json"), rep);
    std::cout << "uncle gap log-log slope: " << ul::format_float(fit.slope) << "\n";
    return 0;
}

int sweep_dense_windows(ul::RunConfig config) {
    if (config.n_lo == 0) {
        config.n_lo = 10;
        config.n_hi = 14;
    }
    ul::BlockMps c = ul::ghz_tensor();
    ul::Perturbation p = ul::random_injective_perturbation(c, config.seed);
    ul::ProjectorTerm uncle = ul::uncle_local_term(c, p, 3, config.tol);
    ul::ProjectorTerm parent = ul::parent_local_term(c, 2, config.tol);

    // Base excitation energy from the momentum trial state on the largest
    // odd ring 2N+3 inside the scan range.
    int nref = config.n_hi % 2 == 1 ? config.n_hi : config.n_hi - 1;
    int big_n = (nref - 3) / 2;
    if (big_n < 4)
        throw ul::GeometryError("dense-windows: momentum reference needs n_hi >= 11");
    ul::ChainOperator href = ul::assemble(uncle, nref, ul::BoundaryKind::Periodic);
    ul::TrialState base = ul::ghz_momentum_state(big_n, 1, href);
    double lambda_hat = base.ratio;
    double delta = ul::residual_report(href, base.state).residual;
    std::vector<ul::Window> windows;
    for (int j = 1; j <= 4; ++j)
        windows.push_back(
            {j * lambda_hat, std::max(j * delta + 0.02, 0.05)});

    int jobs = config.n_hi - config.n_lo + 1;
    std::vector<ul::WindowScanRow> scans(static_cast<size_t>(jobs));
    std::vector<ul::WindowHit> parent_hits(static_cast<size_t>(jobs));
    run_indexed_jobs(jobs, config.workers, [&](int i) {
        int n = config.n_lo + i;
        scans[static_cast<size_t>(i)] = ul::dense_window_scan(
            ul::assemble(uncle, n, ul::BoundaryKind::Periodic), windows);
        // The parent term is diagonal, so its exact spectrum is enumerable at
        // any length; the sub-gap window must stay empty.
        ul::RealVector spec =
            ul::diagonal_spectrum(ul::assemble(parent, n, ul::BoundaryKind::Periodic));
        parent_hits[static_cast<size_t>(i)] =
            ul::window_hits(spec, {ul::Window{1.0, 0.5}})[0];
    });

    int n0 = -1;
    for (int i = jobs - 1; i >= 0; --i) {
        bool all = true;
        for (const ul::WindowHit& hit : scans[static_cast<size_t>(i)].hits)
            all = all && hit.hit;
        if (!all) break;
        n0 = config.n_lo + i;
    }
    std::ostringstream csv;
    csv << "n,window,center,halfwidth,hit,value\n";
    for (int i = 0; i < jobs; ++i)
        for (const ul::WindowHit& hit : scans[static_cast<size_t>(i)].hits)
            csv << (config.n_lo + i) << ',' << hit.window << ','
                << ul::format_float(windows[static_cast<size_t>(hit.window)].center) << ','
                << ul::format_float(windows[static_cast<size_t>(hit.window)].halfwidth)
                << ',' << (hit.hit ? 1 : 0) << ',' << ul::format_float(hit.value) << '\n';
    ul::save_text(out_path(config, "windows.csv"), csv.str());

    json rep = report_shell(config);
    rep["bundle"] = "dense-windows";
    rep["lambda_hat"] = lambda_hat;
    rep["base_residual"] = delta;
    rep["first_all_hit_n"] = n0;
    json rows = json::array();
    for (int i = 0; i < jobs; ++i) {
        json hits = json::array();
        for (const ul::WindowHit& hit : scans[static_cast<size_t>(i)].hits)
            hits.push_back({{"window", hit.window}, {"hit", hit.hit}, {"value", hit.value}});
        rows.push_back({{"n", config.n_lo + i},
                        {"method", scans[static_cast<size_t>(i)].method},
                        {"hits", hits},
                        {"parent_subgap_hit", parent_hits[static_cast<size_t>(i)].hit}});
    }
    rep["scan"] = rows;
    ul::save_json(out_path(config, "windows.json"), rep);
    std::cout << "lambda_hat=" << ul::format_float(lambda_hat)
              << " base residual=" << ul::format_float(delta) << "\n";
    std::cout << "all windows hit from n=" << n0 << " through n=" << config.n_hi << "\n";
    return 0;
}

int cmd_sweep(ul::RunConfig config, bool n_range_set) {
    json cfg = ul::load_json(config.inputs[0]);
    std::string bundle;
    try {
        bundle = cfg.at("bundle").get<std::string>();
        if (cfg.contains("seed") && config.seed == 1)
            config.seed = cfg.at("seed").get<std::uint64_t>();
        if (cfg.contains("n_lo") && !n_range_set) config.n_lo = cfg.at("n_lo").get<int>();
        if (cfg.contains("n_hi") && !n_range_set) config.n_hi = cfg.at("n_hi").get<int>();
    } catch (const json::exception& e) {
        throw ul::ParseError(config.inputs[0] + ": " + e.what());
    }
    if (bundle == "ghz-gapless") return sweep_ghz_gapless(config);
    if (bundle == "dense-windows") return sweep_dense_windows(config);
    throw ul::ParseError("unknown sweep bundle '" + bundle + "'");
}

int demo_ghz(const ul::RunConfig& config) {
    ul::BlockMps c = ul::ghz_tensor();
    ul::Perturbation p = ul::random_injective_perturbation(c, config.seed);
    ul::ProjectorTerm uncle = ul::uncle_local_term(c, p, 3, config.tol);
    double dev = ul::operator_norm(uncle.matrix - ul::ghz_uncle_term().matrix);
    std::cout << "uncle term vs closed form: " << ul::format_float(dev) << "\n";
    for (int n = 6; n <= 10; ++n) {
        ul::SpectrumReport rep =
            ul::low_spectrum(ul::assemble(uncle, n, ul::BoundaryKind::Periodic), 4);
        std::cout << "n=" << n << " kernel_dim=" << rep.kernel_dim
                  << " gap=" << ul::format_float(rep.gap) << "\n";
    }
    return 0;
}

int demo_zero(const ul::RunConfig& config) {
    ul::ProjectorTerm term = ul::zero_uncle_term3();
    for (int n = 6; n <= 10; ++n) {
        ul::ChainOperator h = ul::assemble(term, n, ul::BoundaryKind::Periodic);
        ul::Matrix kernel = ul::kernel_basis(h);
        ul::Vector zero_state = ul::Vector::Zero(h.dim());
        zero_state[0] = 1.0;
        ul::Vector w = ul::Vector::Zero(h.dim());
        for (int j = 1; j <= n; ++j) w[std::int64_t{1} << (n - j)] = 1.0;
        w.normalize();
        double over = std::min((kernel.adjoint() * zero_state).squaredNorm(),
                               (kernel.adjoint() * w).squaredNorm());
        std::cout << "n=" << n << " kernel_dim=" << kernel.cols()
                  << " predicted-pair overlap=" << ul::format_float(over) << "\n";
    }
    ul::MpsTensor a = ul::zero_scalar_tensor();
    ul::Matrix r1(1, 1), r2(1, 1);
    r1 << 0.3;
    r2 << 1.0;
    ul::MpsTensor r({r1, r2});
    int n = 12;
    ul::ChainOperator h = ul::assemble(term, n, ul::BoundaryKind::Periodic);
    for (int k : {1, 2}) {
        ul::DenseTrial t = ul::defect_momentum_state(a, r, n, k, h);
        std::cout << "momentum k=" << k << ": norm2/N=" << ul::format_float(t.norm2 / n)
                  << " energy ratio*N=" << ul::format_float(t.ratio * n) << "\n";
    }
    (void)config;
    return 0;
}

int demo_injective(const ul::RunConfig& config) {
    // Scalar base tensor with a generic defect on nine sites.
    ul::Rng rng(config.seed);
    ul::MpsTensor a = ul::zero_scalar_tensor();
    ul::MpsTensor r({ul::random_matrix(rng, 1, 1), ul::random_matrix(rng, 1, 1)});
    ul::GroundSpaceReport rep = ul::injective_uncle_check(a, r, 9, config.tol);
    std::cout << "scalar base, n=9: kernel_dim=" << rep.kernel_dim
              << " overlap=" << ul::format_float(rep.overlap) << "\n";

    // Bond-dimension-2 base needs d >= 4 for injectivity.
    ul::MpsTensor a2;
    for (int attempt = 0;; ++attempt) {
        std::vector<ul::Matrix> mats;
        for (int i = 0; i < 4; ++i) mats.push_back(ul::random_matrix(rng, 2, 2));
        ul::MpsTensor t(std::move(mats));
        if (ul::is_injective(t)) {
            a2 = ul::canonicalize(t).tensor;
            break;
        }
        if (attempt > 32) throw ul::ConvergenceError("demo: no injective draw");
    }
    std::vector<ul::Matrix> rmats;
    for (int i = 0; i < 4; ++i) rmats.push_back(ul::random_matrix(rng, 2, 2));
    ul::GroundSpaceReport rep2 =
        ul::injective_uncle_check(a2, ul::MpsTensor(std::move(rmats)), 6, config.tol);
    std::cout << "bond-2 base, n=6: kernel_dim=" << rep2.kernel_dim
              << " overlap=" << ul::format_float(rep2.overlap) << "\n";
    return 0;
}

int demo_xy(const ul::RunConfig&) {
    std::cout << "three-site operator identity deviation: "
              << ul::format_float(ul::xy_identity_check()) << "\n";
    ul::DualityReport dual = ul::duality_sector_check(8);
    std::cout << "duality n=8: isometry defect=" << ul::format_float(dual.isometry_defect)
              << " sector mismatch=" << ul::format_float(dual.sector_mismatch)
              << " full-space mismatch=" << ul::format_float(dual.full_mismatch)
              << " (expected large)\n";
    for (int n : {6, 8, 10}) {
        ul::SandwichReport s = ul::sandwich_check(n);
        std::cout << "sandwich n=" << n << ": holds=" << (s.holds ? "true" : "false")
                  << " worst lower=" << ul::format_float(s.worst_lower)
                  << " worst upper=" << ul::format_float(s.worst_upper) << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"parent and uncle Hamiltonians for matrix product states"};
    app.require_subcommand(1);

    ul::RunConfig config;
    std::string n_range, eps_text, demo_kind;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--seed", config.seed, "random seed");
        sub->add_option("--tol", config.tol, "rank tolerance");
        sub->add_option("--out", config.out_dir, "output directory");
        sub->add_option("--format", config.format, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--workers", config.workers, "worker pool size");
    };

    CLI::App* inspect = app.add_subcommand("inspect", "standard-form report for a tensor file");
    inspect->add_option("tensor", "tensor or block file")->required();
    add_common(inspect);

    CLI::App* uncle = app.add_subcommand("uncle", "build the limit local term");
    uncle->add_option("tensor", "block file")->required();
    uncle->add_option("perturbation", "perturbation file (omitted: seeded draw)");
    uncle->add_option("--sites", config.sites, "blocked sites (2 or 3)")
        ->check(CLI::IsMember({2, 3}));
    uncle->add_option("--eps", eps_text, "strengths for the convergence probe");
    add_common(uncle);

    CLI::App* spectrum = app.add_subcommand("spectrum", "chain spectra for a term file");
    spectrum->add_option("term", "local term file")->required();
    spectrum->add_option("--n-range", n_range, "chain lengths a..b");
    spectrum->add_option("--boundary", config.boundary, "open or periodic")
        ->check(CLI::IsMember({"open", "periodic"}));
    spectrum->add_option("--count", config.count, "eigenvalues per chain");
    add_common(spectrum);

    CLI::App* sweep = app.add_subcommand("sweep", "run a bundled experiment");
    sweep->add_option("config", "sweep config file")->required();
    CLI::Option* sw_range = sweep->add_option("--n-range", n_range, "chain lengths a..b");
    add_common(sweep);

    CLI::App* demo = app.add_subcommand("demo", "showcase runs");
    demo->add_option("kind", demo_kind, "ghz, zero, injective, or xy")
        ->required()
        ->check(CLI::IsMember({"ghz", "zero", "injective", "xy"}));
    add_common(demo);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        config.command = app.get_subcommands().front()->get_name();
        for (CLI::App* sub : app.get_subcommands())
            for (const std::string& pos : {"tensor", "term", "config"})
                if (sub->get_option_no_throw(pos) != nullptr && sub->count(pos) > 0)
                    config.inputs.push_back(sub->get_option(pos)->as<std::string>());
        if (uncle->parsed() && uncle->count("perturbation") > 0)
            config.inputs.push_back(uncle->get_option("perturbation")->as<std::string>());
        if (!eps_text.empty()) config.eps_list = parse_eps_list(eps_text);
        if (!n_range.empty()) {
            auto [lo, hi] = parse_n_range(n_range);
            config.n_lo = lo;
            config.n_hi = hi;
        } else if (spectrum->parsed()) {
            config.n_lo = 6;
            config.n_hi = 10;
        }

        if (inspect->parsed()) return cmd_inspect(config);
        if (uncle->parsed()) return cmd_uncle(config);
        if (spectrum->parsed()) return cmd_spectrum(config);
        if (sweep->parsed()) return cmd_sweep(config, sw_range->count() > 0);
        if (demo->parsed()) {
            config.command = "demo " + demo_kind;
            if (demo_kind == "ghz") return demo_ghz(config);
            if (demo_kind == "zero") return demo_zero(config);
            if (demo_kind == "injective") return demo_injective(config);
            return demo_xy(config);
        }
        return 2;
    } catch (const ul::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
}
