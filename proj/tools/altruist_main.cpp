// altruist: command-line front end for the altruistic cooperative
// estimation library. Every command is seeded and writes deterministic
// CSV files (header row, LF endings, >= 9 significant digits).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "altruist/altruism_equations.hpp"
#include "altruist/closed_form.hpp"
#include "altruist/distributions.hpp"
#include "altruist/empirical.hpp"
#include "altruist/gaussian_scalar.hpp"
#include "altruist/linalg.hpp"

namespace fs = std::filesystem;
using namespace altruist;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitVerification = 2;

// Grids reuse at most this many rows of the command's shared sample set
// (the contour-level noise of 1e5 samples matches the summary tables).
constexpr std::size_t kGridSampleCap = 100000;

struct Options {
    std::uint64_t seed = 42;
    std::size_t samples = 1000000;
    std::string out = ".";
    int grid = 500;
    double grid_min = 0.0;
    double grid_max = 0.0;
    bool grid_range_set = false;
};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

class CsvWriter {
public:
    CsvWriter(const fs::path& path) : path_(path), out_(path, std::ios::binary) {
        if (!out_) throw std::runtime_error("cannot open output file: " + path.string());
    }
    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out_ << ',';
            out_ << cells[i];
        }
        out_ << '\n';
    }
    void close() {
        out_.close();
        if (!out_) throw std::runtime_error("write failure: " + path_.string());
    }

private:
    fs::path path_;
    std::ofstream out_;
};

void ensure_out_dir(const Options& opt) {
    std::error_code ec;
    fs::create_directories(opt.out, ec);
    if (ec) throw std::runtime_error("cannot create output directory " + opt.out +
                                     ": " + ec.message());
}

void validate_example(const Options& opt) {
    if (opt.samples < 1000)
        throw std::invalid_argument("--samples must be >= 1000 for example commands");
    if (opt.grid < 2) throw std::invalid_argument("--grid must be >= 2");
}

SampleSet grid_subset(const SampleSet& s) {
    if (s.count <= kGridSampleCap) return s;
    SampleSet g;
    g.dim = s.dim;
    g.count = kGridSampleCap;
    g.seed = s.seed;
    g.points.assign(s.points.begin(),
                    s.points.begin() + static_cast<long>(kGridSampleCap * s.dim));
    return g;
}

// Exact O(log N) cost of a 1-D pair over sorted samples via prefix sums.
struct SortedCost1D {
    std::vector<double> xs, s1, s2;

    explicit SortedCost1D(const SampleSet& s) : xs(s.points) {
        std::sort(xs.begin(), xs.end());
        s1.resize(xs.size() + 1, 0.0);
        s2.resize(xs.size() + 1, 0.0);
        for (std::size_t i = 0; i < xs.size(); ++i) {
            s1[i + 1] = s1[i] + xs[i];
            s2[i + 1] = s2[i] + xs[i] * xs[i];
        }
    }

    double sse(double c, std::size_t lo, std::size_t hi) const {  // sum over [lo,hi)
        const double cnt = static_cast<double>(hi - lo);
        return cnt * c * c - 2.0 * c * (s1[hi] - s1[lo]) + (s2[hi] - s2[lo]);
    }

    double cost(double a, double b) const {
        const std::size_t n = xs.size();
        if (a == b) return sse(a, 0, n) / static_cast<double>(n);
        const double m = 0.5 * (a + b);
        double total;
        if (b > a) {
            // region 1 (estimator a): x < m; tie x == m goes to region 2
            const std::size_t cut = static_cast<std::size_t>(
                std::lower_bound(xs.begin(), xs.end(), m) - xs.begin());
            total = sse(a, 0, cut) + sse(b, cut, n);
        } else {
            // delta < 0: region 1 (estimator a) is x > m
            const std::size_t cut = static_cast<std::size_t>(
                std::upper_bound(xs.begin(), xs.end(), m) - xs.begin());
            total = sse(b, 0, cut) + sse(a, cut, n);
        }
        return total / static_cast<double>(xs.size());
    }
};

void write_1d_grid(const fs::path& path, const SortedCost1D& eval, int grid,
                   double lo, double hi) {
    CsvWriter csv(path);
    csv.row({"theta1", "theta2", "cost"});
    for (int i = 0; i < grid; ++i) {
        const double a = lo + (hi - lo) * i / (grid - 1);
        for (int j = 0; j < grid; ++j) {
            const double b = lo + (hi - lo) * j / (grid - 1);
            csv.row({fmt(a), fmt(b), fmt(eval.cost(a, b))});
        }
    }
    csv.close();
}

int cmd_example_1d(const Options& opt) {
    validate_example(opt);
    ensure_out_dir(opt);
    const double lo = opt.grid_range_set ? opt.grid_min : -30.0;
    const double hi = opt.grid_range_set ? opt.grid_max : 30.0;

    const GaussianBelief belief({0.0}, CovarianceMatrix(1, {100.0}));
    const SampleSet samples = sample_gaussian(belief, opt.samples, opt.seed);

    const EstimatorPair het = heterarchical_pair(belief);
    const EstimatorPair hier = hierarchical_pair(belief, Branch::plus);
    const CostReport het_cost = analytic_cost(belief, CostKind::heterarchical);
    const CostReport hier_cost = analytic_cost(belief, CostKind::hierarchical);
    const McCost het_mc = mc_cost(samples, het);
    const McCost hier_mc = mc_cost(samples, hier);

    LloydConfig cfg;
    cfg.seed = opt.seed;
    const LloydResult lh = lloyd_heterarchical(samples, cfg);
    const LloydResult li = lloyd_hierarchical(samples, cfg);

    CsvWriter csv(fs::path(opt.out) / "example1d_summary.csv");
    csv.row({"method", "first", "second", "j_ms", "j_analytic", "mc_cost",
             "mc_std_error", "lloyd_first", "lloyd_second", "lloyd_mc_cost",
             "lloyd_iterations", "lloyd_converged", "lloyd_restart"});
    csv.row({"heterarchical", fmt(het.first[0]), fmt(het.second[0]),
             fmt(het_cost.j_ms), fmt(het_cost.j_value), fmt(het_mc.mean),
             fmt(het_mc.std_error), fmt(lh.pair.first[0]), fmt(lh.pair.second[0]),
             fmt(lh.mc_cost), std::to_string(lh.iterations),
             lh.converged ? "1" : "0", std::to_string(lh.restart_index)});
    csv.row({"hierarchical", fmt(hier.first[0]), fmt(hier.second[0]),
             fmt(hier_cost.j_ms), fmt(hier_cost.j_value), fmt(hier_mc.mean),
             fmt(hier_mc.std_error), fmt(li.pair.first[0]), fmt(li.pair.second[0]),
             fmt(li.mc_cost), std::to_string(li.iterations),
             li.converged ? "1" : "0", std::to_string(li.restart_index)});
    csv.close();

    const SortedCost1D eval(samples);
    write_1d_grid(fs::path(opt.out) / "example1d_grid.csv", eval, opt.grid, lo, hi);
    return kExitOk;
}

int cmd_cost_grid(const Options& opt) {
    validate_example(opt);
    ensure_out_dir(opt);
    const double lo = opt.grid_range_set ? opt.grid_min : -30.0;
    const double hi = opt.grid_range_set ? opt.grid_max : 30.0;
    const GaussianBelief belief({0.0}, CovarianceMatrix(1, {100.0}));
    const SampleSet samples = sample_gaussian(belief, opt.samples, opt.seed);
    const SortedCost1D eval(samples);
    write_1d_grid(fs::path(opt.out) / "cost_grid.csv", eval, opt.grid, lo, hi);
    return kExitOk;
}

int cmd_example_2d(const Options& opt) {
    validate_example(opt);
    ensure_out_dir(opt);
    const double lo = opt.grid_range_set ? opt.grid_min : -5.0;
    const double hi = opt.grid_range_set ? opt.grid_max : 5.0;

    const GaussianBelief belief({0.0, 0.0},
                                CovarianceMatrix(2, {5.0, 1.5, 1.5, 1.0}));
    const SampleSet samples = sample_gaussian(belief, opt.samples, opt.seed);

    const EstimatorPair het = heterarchical_pair(belief);
    const EstimatorPair hier = hierarchical_pair(belief, Branch::plus);
    const CostReport het_cost = analytic_cost(belief, CostKind::heterarchical);
    const CostReport hier_cost = analytic_cost(belief, CostKind::hierarchical);
    const McCost het_mc = mc_cost(samples, het);
    const McCost hier_mc = mc_cost(samples, hier);

    LloydConfig cfg;
    cfg.seed = opt.seed;
    const LloydResult lh = lloyd_heterarchical(samples, cfg);
    const LloydResult li = lloyd_hierarchical(samples, cfg);

    CsvWriter csv(fs::path(opt.out) / "example2d_summary.csv");
    csv.row({"method", "first_x", "first_y", "second_x", "second_y", "j_ms",
             "j_analytic", "mc_cost", "mc_std_error", "lloyd_first_x",
             "lloyd_first_y", "lloyd_second_x", "lloyd_second_y",
             "lloyd_mc_cost", "lloyd_iterations", "lloyd_converged",
             "lloyd_restart"});
    csv.row({"heterarchical", fmt(het.first[0]), fmt(het.first[1]),
             fmt(het.second[0]), fmt(het.second[1]), fmt(het_cost.j_ms),
             fmt(het_cost.j_value), fmt(het_mc.mean), fmt(het_mc.std_error),
             fmt(lh.pair.first[0]), fmt(lh.pair.first[1]), fmt(lh.pair.second[0]),
             fmt(lh.pair.second[1]), fmt(lh.mc_cost), std::to_string(lh.iterations),
             lh.converged ? "1" : "0", std::to_string(lh.restart_index)});
    csv.row({"hierarchical", fmt(hier.first[0]), fmt(hier.first[1]),
             fmt(hier.second[0]), fmt(hier.second[1]), fmt(hier_cost.j_ms),
             fmt(hier_cost.j_value), fmt(hier_mc.mean), fmt(hier_mc.std_error),
             fmt(li.pair.first[0]), fmt(li.pair.first[1]), fmt(li.pair.second[0]),
             fmt(li.pair.second[1]), fmt(li.mc_cost), std::to_string(li.iterations),
             li.converged ? "1" : "0", std::to_string(li.restart_index)});
    csv.close();

    const SampleSet gs = grid_subset(samples);

    // heterarchical slice: first estimator = -second
    {
        CsvWriter grid_csv(fs::path(opt.out) / "example2d_het_grid.csv");
        grid_csv.row({"second_x", "second_y", "cost"});
        EstimatorPair pair;
        pair.first.resize(2);
        pair.second.resize(2);
        for (int i = 0; i < opt.grid; ++i) {
            const double x = lo + (hi - lo) * i / (opt.grid - 1);
            for (int j = 0; j < opt.grid; ++j) {
                const double y = lo + (hi - lo) * j / (opt.grid - 1);
                pair.second = {x, y};
                pair.first = {-x, -y};
                grid_csv.row({fmt(x), fmt(y), fmt(mc_cost(gs, pair).mean)});
            }
        }
        grid_csv.close();
    }

    // hierarchical slice: first estimator pinned at the MMSEE
    {
        CsvWriter grid_csv(fs::path(opt.out) / "example2d_hier_grid.csv");
        grid_csv.row({"second_x", "second_y", "cost"});
        EstimatorPair pair;
        pair.first = {0.0, 0.0};
        pair.second.resize(2);
        for (int i = 0; i < opt.grid; ++i) {
            const double x = lo + (hi - lo) * i / (opt.grid - 1);
            for (int j = 0; j < opt.grid; ++j) {
                const double y = lo + (hi - lo) * j / (opt.grid - 1);
                pair.second = {x, y};
                grid_csv.row({fmt(x), fmt(y), fmt(mc_cost(gs, pair).mean)});
            }
        }
        grid_csv.close();
    }
    return kExitOk;
}

int cmd_trimodal(Options opt) {
    if (opt.samples == 1000000) opt.samples = 99999;  // divisible by 3
    validate_example(opt);
    ensure_out_dir(opt);

    const MixtureSpec spec = trimodal_mixture();
    const SampleSet samples = sample_mixture(spec, opt.samples, opt.seed);

    // histogram: 200 bins over [-25, 25]
    {
        constexpr int kBins = 200;
        const double blo = -25.0, bhi = 25.0;
        std::vector<std::size_t> counts(kBins, 0);
        for (double x : samples.points) {
            if (x < blo || x >= bhi) continue;
            const int b = static_cast<int>((x - blo) / (bhi - blo) * kBins);
            ++counts[std::min(b, kBins - 1)];
        }
        CsvWriter csv(fs::path(opt.out) / "trimodal_histogram.csv");
        csv.row({"bin_center", "count", "density"});
        const double width = (bhi - blo) / kBins;
        for (int b = 0; b < kBins; ++b) {
            const double center = blo + (b + 0.5) * width;
            const double density = static_cast<double>(counts[b]) /
                                   (static_cast<double>(samples.count) * width);
            csv.row({fmt(center), std::to_string(counts[b]), fmt(density)});
        }
        csv.close();
    }

    LloydConfig cfg;
    cfg.seed = opt.seed;
    const LloydResult lr = lloyd_heterarchical(samples, cfg);
    const McCost lr_cost = mc_cost(samples, lr.pair);

    EstimatorPair mirror;
    mirror.kind = PairKind::heterarchical;
    mirror.first = {-lr.pair.second[0]};
    mirror.second = {-lr.pair.first[0]};
    const McCost mirror_cost = mc_cost(samples, mirror);

    double mean = 0.0;
    for (double x : samples.points) mean += x;
    mean /= static_cast<double>(samples.count);

    CsvWriter csv(fs::path(opt.out) / "trimodal_summary.csv");
    csv.row({"label", "first", "second", "mc_cost", "mc_std_error", "boundary",
             "sample_mean", "iterations", "converged", "restart"});
    csv.row({"lloyd", fmt(lr.pair.first[0]), fmt(lr.pair.second[0]),
             fmt(lr_cost.mean), fmt(lr_cost.std_error),
             fmt(lr.pair.midpoint()[0]), fmt(mean), std::to_string(lr.iterations),
             lr.converged ? "1" : "0", std::to_string(lr.restart_index)});
    csv.row({"mirror", fmt(mirror.first[0]), fmt(mirror.second[0]),
             fmt(mirror_cost.mean), fmt(mirror_cost.std_error),
             fmt(mirror.midpoint()[0]), fmt(mean), "0", "1", "-1"});
    csv.close();

    // the two symmetric solution sets must agree within MC noise
    const double gap = std::abs(lr_cost.mean - mirror_cost.mean);
    const double tol = 2.0 * (lr_cost.std_error + mirror_cost.std_error);
    if (gap > tol) {
        std::cerr << "trimodal: mirror-set cost mismatch (" << gap << " > " << tol
                  << ")\n";
        return kExitVerification;
    }
    return kExitOk;
}

int cmd_bounds(const Options& opt) {
    if (opt.grid < 2) throw std::invalid_argument("--grid must be >= 2");
    ensure_out_dir(opt);
    CsvWriter csv(fs::path(opt.out) / "bounds.csv");
    csv.row({"dim", "ht_lower", "ht_upper", "hi_lower", "hi_upper"});
    for (int n = 1; n <= opt.grid; ++n) {
        const ReductionBounds b = reduction_bounds(static_cast<std::size_t>(n));
        csv.row({std::to_string(n), fmt(b.ht_lower), fmt(b.ht_upper),
                 fmt(b.hi_lower), fmt(b.hi_upper)});
    }
    csv.close();
    return kExitOk;
}

int cmd_verify(const Options& opt) {
    bool all_pass = true;
    const auto report = [&all_pass](const std::string& name, bool pass,
                                    const std::string& detail) {
        all_pass = all_pass && pass;
        std::cout << (pass ? "PASS" : "FAIL") << "  " << name;
        if (!detail.empty()) std::cout << "  (" << detail << ")";
        std::cout << "\n";
    };

    try {
        const AltruismConstants c = solve_hierarchical_constant();
        report("w_hi close to 1.224", std::abs(c.w_hi - 1.224) < 5e-4,
               "w_hi=" + fmt(c.w_hi));
        report("c_hi close to 0.405", std::abs(c.c_hi - 0.405) < 5e-4,
               "c_hi=" + fmt(c.c_hi));
        report("g_hi(w_hi/2) = 0", std::abs(g_hi(0.5 * c.w_hi)) <= 1e-12,
               "residual=" + fmt(g_hi(0.5 * c.w_hi)));
        const double closed = c.w_hi * c.w_hi * std_cdf_compl(0.5 * c.w_hi);
        report("c_hi = w_hi^2 (1 - Phi(w_hi/2))", std::abs(c.c_hi - closed) <= 1e-12,
               "");

        const RootScanReport rs = verify_root_uniqueness(1e-3, 10.0);
        report("f_ht strictly negative on (0, 10]", rs.ht_negative,
               "max=" + fmt(rs.ht_worst_value) + " at chi=" +
                   fmt(rs.ht_offending_chi));
        report("g_hi single sign change in (0, sqrt(3))",
               rs.hi_single_crossing && rs.hi_crossing_in_bracket,
               "crossings=" + std::to_string(rs.hi_sign_changes) + " at chi=" +
                   fmt(rs.hi_crossing_chi));
        report("g_hi' single sign change in (0, sqrt(3))",
               rs.hi_deriv_single_crossing,
               "crossings=" + std::to_string(rs.hi_deriv_sign_changes));

        const GaussianBelief belief({0.0}, CovarianceMatrix(1, {100.0}));
        const SampleSet samples =
            sample_gaussian(belief, std::max<std::size_t>(opt.samples, 1000), opt.seed);
        const FarFieldReport ff = sanity_far_field(samples, 10.0);
        report("far-field cost exceeds empirical MMSE - 1%", ff.pass,
               "worst margin=" + fmt(ff.worst_margin));
    } catch (const std::exception& e) {
        report(std::string("verification aborted: ") + e.what(), false, "");
    }

    return all_pass ? kExitOk : kExitVerification;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"altruistic cooperative estimation toolkit"};
    app.require_subcommand(1);

    Options opt;
    app.add_option("--seed", opt.seed, "PRNG seed")->capture_default_str();
    app.add_option("--samples", opt.samples, "Monte Carlo sample count")
        ->capture_default_str();
    app.add_option("--out", opt.out, "output directory")->capture_default_str();
    app.add_option("--grid", opt.grid, "grid resolution / bounds dimension count")
        ->capture_default_str();
    auto* gmin = app.add_option("--grid-min", opt.grid_min, "grid lower bound");
    app.add_option("--grid-max", opt.grid_max, "grid upper bound")->needs(gmin);
    app.fallthrough();

    auto* c1 = app.add_subcommand("example-1d", "1-D Gaussian N(0,100) example");
    auto* c2 = app.add_subcommand("example-2d", "2-D Gaussian example");
    auto* c3 = app.add_subcommand("trimodal", "1-D trimodal mixture example");
    auto* c4 = app.add_subcommand("bounds", "cost-reduction bounds vs dimension");
    auto* c5 = app.add_subcommand("cost-grid", "1-D Gaussian cost surface");
    auto* c6 = app.add_subcommand("verify", "root-structure and sanity checks");

    CLI11_PARSE(app, argc, argv);
    opt.grid_range_set = gmin->count() > 0;

    try {
        if (c1->parsed()) return cmd_example_1d(opt);
        if (c2->parsed()) return cmd_example_2d(opt);
        if (c3->parsed()) return cmd_trimodal(opt);
        if (c4->parsed()) return cmd_bounds(opt);
        if (c5->parsed()) return cmd_cost_grid(opt);
        if (c6->parsed()) return cmd_verify(opt);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitValidation;
}
