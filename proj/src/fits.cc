#include <gsl/gsl_fit.h>
#include <gsl/gsl_multimin.h>
#include <gsl/gsl_randist.h>
#include <gsl/gsl_rng.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <stdexcept>

#include "cohqec/harness.h"

namespace cohqec {

namespace {

constexpr double kHuge = 1e30;

struct Series {
    double size;
    std::vector<double> p, y, var;
};

std::vector<Series> by_size(const std::vector<CollapsePoint>& data) {
    std::map<double, std::vector<CollapsePoint>> groups;
    for (const auto& d : data) {
        groups[d.size].push_back(d);
    }
    std::vector<Series> out;
    for (auto& [size, pts] : groups) {
        std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a.p < b.p; });
        Series s{size, {}, {}, {}};
        for (const auto& pt : pts) {
            s.p.push_back(pt.p);
            s.y.push_back(pt.mean);
            s.var.push_back(pt.stderr_ * pt.stderr_);
        }
        out.push_back(std::move(s));
    }
    return out;
}

double variance_floor(const std::vector<CollapsePoint>& data) {
    std::vector<double> errs;
    for (const auto& d : data) {
        if (d.stderr_ > 0) {
            errs.push_back(d.stderr_);
        }
    }
    if (errs.empty()) {
        return 1e-12;
    }
    std::nth_element(errs.begin(), errs.begin() + errs.size() / 2, errs.end());
    double m = 0.1 * errs[errs.size() / 2];
    return m * m;
}

double cost_of(const std::vector<Series>& series, double floor, std::size_t total, double p_c, double nu) {
    if (!(nu > 0)) {
        return kHuge;
    }
    std::vector<std::vector<double>> xs(series.size());
    for (std::size_t s = 0; s < series.size(); ++s) {
        double scale = std::pow(series[s].size, 1.0 / nu);
        for (double p : series[s].p) {
            xs[s].push_back((p - p_c) * scale);
        }
    }
    double sum = 0;
    std::size_t terms = 0;
    for (std::size_t s = 0; s < series.size(); ++s) {
        for (std::size_t i = 0; i < xs[s].size(); ++i) {
            double x = xs[s][i];
            double master = 0, master_var = 0;
            std::size_t partners = 0;
            for (std::size_t o = 0; o < series.size(); ++o) {
                if (o == s) {
                    continue;
                }
                const auto& xo = xs[o];
                auto it = std::upper_bound(xo.begin(), xo.end(), x);
                if (it == xo.begin() || it == xo.end()) {
                    continue;
                }
                std::size_t j = static_cast<std::size_t>(it - xo.begin()) - 1;
                double t = (x - xo[j]) / (xo[j + 1] - xo[j]);
                master += (1 - t) * series[o].y[j] + t * series[o].y[j + 1];
                master_var += (1 - t) * (1 - t) * series[o].var[j] + t * t * series[o].var[j + 1];
                ++partners;
            }
            if (partners == 0) {
                continue;
            }
            double pn = static_cast<double>(partners);
            master /= pn;
            master_var /= pn * pn;
            double diff = series[s].y[i] - master;
            sum += diff * diff / std::max(series[s].var[i] + master_var, floor);
            ++terms;
        }
    }
    // Too little overlap makes the residual meaningless.
    if (terms < std::max<std::size_t>(2, total / 4)) {
        return kHuge;
    }
    return sum / static_cast<double>(terms);
}

struct Problem {
    std::vector<Series> series;
    double floor;
    std::size_t total;
    CollapseRanges ranges;
};

double simplex_cost(const gsl_vector* v, void* params) {
    const auto* pr = static_cast<const Problem*>(params);
    double p_c = gsl_vector_get(v, 0);
    double nu = gsl_vector_get(v, 1);
    if (p_c < pr->ranges.pc_min || p_c > pr->ranges.pc_max || nu < pr->ranges.nu_min || nu > pr->ranges.nu_max) {
        return kHuge;
    }
    return cost_of(pr->series, pr->floor, pr->total, p_c, nu);
}

void refine(const Problem& problem, double& p_c, double& nu, double& cost) {
    gsl_multimin_function f{&simplex_cost, 2, const_cast<Problem*>(&problem)};
    std::unique_ptr<gsl_vector, decltype(&gsl_vector_free)> x(gsl_vector_alloc(2), &gsl_vector_free);
    std::unique_ptr<gsl_vector, decltype(&gsl_vector_free)> step(gsl_vector_alloc(2), &gsl_vector_free);
    gsl_vector_set(x.get(), 0, p_c);
    gsl_vector_set(x.get(), 1, nu);
    const auto& r = problem.ranges;
    double g = static_cast<double>(std::max<std::size_t>(r.grid, 2) - 1);
    gsl_vector_set(step.get(), 0, (r.pc_max - r.pc_min) / g);
    gsl_vector_set(step.get(), 1, (r.nu_max - r.nu_min) / g);
    std::unique_ptr<gsl_multimin_fminimizer, decltype(&gsl_multimin_fminimizer_free)> m(
        gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, 2), &gsl_multimin_fminimizer_free);
    gsl_multimin_fminimizer_set(m.get(), &f, x.get(), step.get());
    for (int iter = 0; iter < 1000; ++iter) {
        if (gsl_multimin_fminimizer_iterate(m.get())) {
            break;
        }
        if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(m.get()), 1e-7) == GSL_SUCCESS) {
            break;
        }
    }
    if (m->fval <= cost) {
        p_c = gsl_vector_get(m->x, 0);
        nu = gsl_vector_get(m->x, 1);
        cost = m->fval;
    }
}

}  // namespace

double collapse_cost(const std::vector<CollapsePoint>& data, double p_c, double nu) {
    double c = cost_of(by_size(data), variance_floor(data), data.size(), p_c, nu);
    return c >= kHuge ? std::numeric_limits<double>::infinity() : c;
}

CollapseFit collapse_fit(const std::vector<CollapsePoint>& data, const CollapseRanges& ranges) {
    Problem problem{by_size(data), variance_floor(data), data.size(), ranges};
    if (problem.series.size() < 2) {
        throw std::invalid_argument("collapse_fit: need at least two sizes");
    }
    for (const auto& s : problem.series) {
        if (s.p.size() < 4) {
            throw std::invalid_argument("collapse_fit: need at least four p values per size");
        }
    }
    if (!(ranges.pc_min < ranges.pc_max) || !(ranges.nu_min > 0 && ranges.nu_min < ranges.nu_max) ||
        ranges.grid < 2) {
        throw std::invalid_argument("collapse_fit: bad search ranges");
    }
    const std::size_t g = ranges.grid;
    auto pc_at = [&](std::size_t i) { return ranges.pc_min + (ranges.pc_max - ranges.pc_min) * i / (g - 1.0); };
    auto nu_at = [&](std::size_t j) { return ranges.nu_min + (ranges.nu_max - ranges.nu_min) * j / (g - 1.0); };

    CollapseFit fit;
    fit.cost = kHuge;
    std::size_t best_i = 0, best_j = 0;
    for (std::size_t i = 0; i < g; ++i) {
        for (std::size_t j = 0; j < g; ++j) {
            double c = cost_of(problem.series, problem.floor, problem.total, pc_at(i), nu_at(j));
            if (c < fit.cost) {
                fit.cost = c;
                best_i = i;
                best_j = j;
            }
        }
    }
    if (fit.cost >= kHuge) {
        throw std::invalid_argument("collapse_fit: curves never overlap in the search range");
    }
    fit.p_c = pc_at(best_i);
    fit.nu = nu_at(best_j);
    refine(problem, fit.p_c, fit.nu, fit.cost);

    // Flat cost in nu at the optimum, or an optimum pinned to the nu boundary.
    double lo = kHuge, hi = 0;
    for (std::size_t j = 0; j < g; ++j) {
        double c = cost_of(problem.series, problem.floor, problem.total, fit.p_c, nu_at(j));
        if (c < kHuge) {
            lo = std::min(lo, c);
            hi = std::max(hi, c);
        }
    }
    double span = ranges.nu_max - ranges.nu_min;
    fit.degenerate = (hi - lo) <= 1e-3 * (1.0 + lo) || fit.nu >= ranges.nu_max - 1e-3 * span ||
                     fit.nu <= ranges.nu_min + 1e-3 * span;

    if (ranges.bootstrap > 1) {
        std::unique_ptr<gsl_rng, decltype(&gsl_rng_free)> rng(gsl_rng_alloc(gsl_rng_mt19937), &gsl_rng_free);
        gsl_rng_set(rng.get(), ranges.seed);
        double s_pc = 0, s_pc2 = 0, s_nu = 0, s_nu2 = 0;
        std::size_t done = 0;
        for (std::size_t b = 0; b < ranges.bootstrap; ++b) {
            std::vector<CollapsePoint> resampled = data;
            for (auto& d : resampled) {
                d.mean += gsl_ran_gaussian(rng.get(), d.stderr_);
            }
            Problem bp{by_size(resampled), problem.floor, problem.total, ranges};
            double pc = fit.p_c, nu = fit.nu;
            double c = cost_of(bp.series, bp.floor, bp.total, pc, nu);
            refine(bp, pc, nu, c);
            if (c >= kHuge) {
                continue;
            }
            s_pc += pc;
            s_pc2 += pc * pc;
            s_nu += nu;
            s_nu2 += nu * nu;
            ++done;
        }
        if (done > 1) {
            double n = static_cast<double>(done);
            fit.p_c_err = std::sqrt(std::max(0.0, (s_pc2 - s_pc * s_pc / n) / (n - 1)));
            fit.nu_err = std::sqrt(std::max(0.0, (s_nu2 - s_nu * s_nu / n) / (n - 1)));
        }
    }
    return fit;
}

std::vector<ExpFitResult> exp_fit_per_logical_qci(const std::vector<ExpFitPoint>& data) {
    std::map<double, std::vector<ExpFitPoint>> groups;
    for (const auto& d : data) {
        if (!(d.mean > 0) || !(d.n > 0)) {
            throw std::invalid_argument("exp_fit_per_logical_qci: means and sizes must be positive");
        }
        groups[d.p].push_back(d);
    }
    std::vector<ExpFitResult> out;
    for (const auto& [p, pts] : groups) {
        if (pts.size() < 3) {
            throw std::invalid_argument("exp_fit_per_logical_qci: need at least three sizes per p");
        }
        std::vector<double> x, y;
        double yy = 0;
        for (const auto& pt : pts) {
            x.push_back(1.0 / pt.n);
            y.push_back(std::log(pt.mean));
            yy += y.back() * y.back();
        }
        double c1 = 0, cov = 0, sumsq = 0;
        gsl_fit_mul(x.data(), 1, y.data(), 1, x.size(), &c1, &cov, &sumsq);
        ExpFitResult r;
        r.p = p;
        r.h = c1 == 0 ? 0.0 : -c1;
        r.h_err = std::sqrt(cov);
        r.residual = sumsq;
        r.linearity = yy > 0 ? 1.0 - sumsq / yy : 1.0;
        out.push_back(r);
    }
    return out;
}

}  // namespace cohqec
