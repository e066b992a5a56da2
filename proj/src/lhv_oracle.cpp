#include "ghznl/lhv_oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ghznl {

namespace {

void check_site_cap(int sites, const char* what) {
    if (sites < 1) {
        throw std::invalid_argument(std::string(what) + ": need at least 1 site");
    }
    if (sites > kLhvSiteCap) {
        throw std::invalid_argument(std::string(what) + ": " + std::to_string(sites) +
                                    " sites exceeds the 4^N enumeration cap (N <= " +
                                    std::to_string(kLhvSiteCap) + ")");
    }
}

long mixed_radix_total(const std::vector<int>& dims, long cap, const char* what) {
    long total = 1;
    for (int d : dims) {
        if (d < 1) throw std::invalid_argument(std::string(what) + ": bad site dimension");
        total *= d;
        if (total > cap) {
            throw std::invalid_argument(std::string(what) + ": total dimension exceeds cap " +
                                        std::to_string(cap));
        }
    }
    return total;
}

// digit_table[a][j] = basis label of site j in product-basis state a.
std::vector<std::vector<int>> build_digit_table(const std::vector<int>& dims, long total) {
    std::vector<std::vector<int>> table(total, std::vector<int>(dims.size()));
    for (long a = 0; a < total; ++a) {
        long rest = a;
        for (int j = static_cast<int>(dims.size()) - 1; j >= 0; --j) {
            table[a][j] = static_cast<int>(rest % dims[j]);
            rest /= dims[j];
        }
    }
    return table;
}

// <a| (x)_j O_j |b> = prod_j O_j[a_j][b_j], evaluated element by element so
// the full Kronecker matrix is never stored.
Complex product_element(const std::vector<OracleMat>& ops, const std::vector<int>& da,
                        const std::vector<int>& db) {
    Complex value(1.0, 0.0);
    for (std::size_t j = 0; j < ops.size(); ++j) {
        value *= ops[j][da[j]][db[j]];
        if (value == Complex(0.0, 0.0)) break;
    }
    return value;
}

OracleVec build_state_vector(const std::vector<int>& dims, const std::vector<OracleTerm>& terms,
                             long total) {
    OracleVec psi(total, Complex(0.0, 0.0));
    for (const auto& term : terms) {
        if (term.factors.size() != dims.size()) {
            throw std::invalid_argument("independent_moment: term has wrong site count");
        }
        for (long idx = 0; idx < total; ++idx) {
            Complex value = term.amp;
            long rest = idx;
            for (int j = static_cast<int>(dims.size()) - 1; j >= 0; --j) {
                const int digit = static_cast<int>(rest % dims[j]);
                rest /= dims[j];
                value *= term.factors[j][digit];
            }
            psi[idx] += value;
        }
    }
    return psi;
}

// rho' = sum_k (I (x) K (x) I) rho (I (x) K (x) I)^dag at `site`.
OracleMat apply_site_channel(const OracleMat& rho, const std::vector<int>& dims, int site,
                             const std::vector<OracleMat>& kraus) {
    const int d = dims[site];
    long left = 1, right = 1;
    for (int j = 0; j < site; ++j) left *= dims[j];
    for (std::size_t j = site + 1; j < dims.size(); ++j) right *= dims[j];
    const long total = left * d * right;

    OracleMat out(total, OracleVec(total, Complex(0.0, 0.0)));
    for (const auto& k : kraus) {
        for (long lr = 0; lr < left * right; ++lr) {
            const long l = lr / right, r = lr % right;
            for (long lr2 = 0; lr2 < left * right; ++lr2) {
                const long l2 = lr2 / right, r2 = lr2 % right;
                for (int a = 0; a < d; ++a) {
                    for (int b = 0; b < d; ++b) {
                        Complex acc(0.0, 0.0);
                        for (int s = 0; s < d; ++s) {
                            for (int t = 0; t < d; ++t) {
                                acc += k[a][s] *
                                       rho[(l * d + s) * right + r][(l2 * d + t) * right + r2] *
                                       std::conj(k[b][t]);
                            }
                        }
                        out[(l * d + a) * right + r][(l2 * d + b) * right + r2] += acc;
                    }
                }
            }
        }
    }
    return out;
}

double selected_max_over_range(std::uint64_t begin, std::uint64_t end, int sites,
                               Selector selector) {
    double best = -1e300;
    for (std::uint64_t k = begin; k < end; ++k) {
        const double v = apply_selector(selector, strategy_product(k, sites));
        if (v > best) best = v;
    }
    return best;
}

}  // namespace

std::pair<int, int> strategy_xy(std::uint64_t index, int site) {
    const int x = (index >> (2 * site)) & 1 ? -1 : +1;
    const int y = (index >> (2 * site + 1)) & 1 ? -1 : +1;
    return {x, y};
}

Complex strategy_product(std::uint64_t index, int sites) {
    Complex z(1.0, 0.0);
    for (int j = 0; j < sites; ++j) {
        const auto [x, y] = strategy_xy(index, j);
        z *= Complex(static_cast<double>(x), static_cast<double>(y));
    }
    return z;
}

double lhv_max(int sites, Selector selector) {
    check_site_cap(sites, "lhv_max");
    const std::uint64_t count = 1ull << (2 * sites);
    double best = -1e300;
#pragma omp parallel for schedule(static) reduction(max : best)
    for (long long k = 0; k < static_cast<long long>(count); ++k) {
        const double v =
            apply_selector(selector, strategy_product(static_cast<std::uint64_t>(k), sites));
        if (v > best) best = v;
    }
    return best;
}

double lhv_max_serial(int sites, Selector selector) {
    check_site_cap(sites, "lhv_max");
    return selected_max_over_range(0, 1ull << (2 * sites), sites, selector);
}

LhvMaximizers lhv_maximizers(int sites, Selector selector) {
    check_site_cap(sites, "lhv_maximizers");
    const std::uint64_t count = 1ull << (2 * sites);
    LhvMaximizers out;
    out.value = lhv_max_serial(sites, selector);
    for (std::uint64_t k = 0; k < count; ++k) {
        const double v = apply_selector(selector, strategy_product(k, sites));
        if (std::abs(v - out.value) <= 1e-12 * std::max(1.0, std::abs(out.value))) {
            out.strategies.push_back(k);
        }
    }
    return out;
}

double lhs_max(int sites, int trusted_count, Selector selector, int phase_resolution) {
    if (trusted_count < 1 || trusted_count > sites) {
        throw std::invalid_argument("lhs_max: trusted count must lie in 1..N (use lhv_max for T=0)");
    }
    const int untrusted = sites - trusted_count;
    if (untrusted > kLhvSiteCap) {
        throw std::invalid_argument("lhs_max: " + std::to_string(untrusted) +
                                    " untrusted sites exceeds the enumeration cap");
    }
    if (phase_resolution < 256) {
        throw std::invalid_argument("lhs_max: phase resolution must be at least 256");
    }

    double best_analytic = -1e300;
    double best_grid = -1e300;
    const std::uint64_t count = 1ull << (2 * untrusted);
    for (std::uint64_t k = 0; k < count; ++k) {
        const Complex z = strategy_product(k, untrusted);  // empty product = 1 for T = N
        const double mod = std::abs(z);
        // max over the aggregate trusted phase of selector(e^{i phi} z):
        // Re, Im and Modulus all reach |z|; Re+Im reaches sqrt(2)|z|.
        const double analytic = selector == Selector::RePlusIm ? std::sqrt(2.0) * mod : mod;
        if (analytic > best_analytic) best_analytic = analytic;

        for (int g = 0; g < phase_resolution; ++g) {
            const double phi = 2.0 * M_PI * g / phase_resolution;
            const double v = apply_selector(selector, std::polar(1.0, phi) * z);
            if (v > best_grid) best_grid = v;
        }
    }
    // The grid can only undershoot the analytic optimum, and by no more
    // than the cosine gap of half a grid step.
    const double gap = best_analytic * (1.0 - std::cos(M_PI / phase_resolution)) + 1e-12;
    if (best_grid > best_analytic + 1e-9 || best_grid < best_analytic - gap) {
        throw std::logic_error("lhs_max: phase-grid confirmation failed");
    }
    return best_analytic;
}

Complex independent_moment(const std::vector<int>& dims, const std::vector<OracleTerm>& terms,
                           const std::vector<OracleMat>& site_ops,
                           const std::vector<std::vector<OracleMat>>& kraus_per_site) {
    if (site_ops.size() != dims.size()) {
        throw std::invalid_argument("independent_moment: operator/site count mismatch");
    }
    for (std::size_t j = 0; j < dims.size(); ++j) {
        const auto& op = site_ops[j];
        if (static_cast<int>(op.size()) != dims[j]) {
            throw std::invalid_argument("independent_moment: operator dimension mismatch at site " +
                                        std::to_string(j + 1));
        }
        for (const auto& row : op) {
            if (static_cast<int>(row.size()) != dims[j]) {
                throw std::invalid_argument("independent_moment: non-square operator at site " +
                                            std::to_string(j + 1));
            }
        }
    }
    const long total = mixed_radix_total(dims, kOracleDimCap, "independent_moment");
    const OracleVec psi = build_state_vector(dims, terms, total);
    const auto digits = build_digit_table(dims, total);

    if (kraus_per_site.empty()) {
        Complex acc(0.0, 0.0);
        for (long a = 0; a < total; ++a) {
            if (psi[a] == Complex(0.0, 0.0)) continue;
            for (long b = 0; b < total; ++b) {
                if (psi[b] == Complex(0.0, 0.0)) continue;
                acc += std::conj(psi[a]) * product_element(site_ops, digits[a], digits[b]) * psi[b];
            }
        }
        return acc;
    }

    if (kraus_per_site.size() != dims.size()) {
        throw std::invalid_argument("independent_moment: channel/site count mismatch");
    }
    if (total > kOracleDensityCap) {
        throw std::invalid_argument(
            "independent_moment: density-matrix path capped at dimension " +
            std::to_string(kOracleDensityCap));
    }
    OracleMat rho(total, OracleVec(total, Complex(0.0, 0.0)));
    for (long a = 0; a < total; ++a) {
        for (long b = 0; b < total; ++b) rho[a][b] = psi[a] * std::conj(psi[b]);
    }
    for (std::size_t j = 0; j < dims.size(); ++j) {
        if (kraus_per_site[j].empty()) continue;
        rho = apply_site_channel(rho, dims, static_cast<int>(j), kraus_per_site[j]);
    }
    Complex acc(0.0, 0.0);
    for (long a = 0; a < total; ++a) {
        for (long b = 0; b < total; ++b) {
            if (rho[b][a] == Complex(0.0, 0.0)) continue;
            acc += product_element(site_ops, digits[a], digits[b]) * rho[b][a];
        }
    }
    return acc;
}

}  // namespace ghznl
