#include "corridor/wls/smoother.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "corridor/core/error.hpp"
#include "corridor/simd/dispatch.hpp"

namespace corridor::wls {

void WlsParams::validate() const {
    if (lambda < 0.0) raise(ErrorCategory::config, "lambda must be >= 0");
    if (!(sigma_color > 0.0)) raise(ErrorCategory::config, "sigma_color must be > 0");
    if (iterations < 1) raise(ErrorCategory::config, "iterations must be >= 1");
    if (!(refine_tolerance > 0.0) || max_refine_iterations < 0)
        raise(ErrorCategory::config, "invalid refinement settings");
}

double guide_weight(std::uint8_t a, std::uint8_t b, double sigma_color) {
    const double diff = std::abs(static_cast<int>(a) - static_cast<int>(b));
    return std::max(std::exp(-diff / sigma_color), kWeightFloor);
}

namespace {

using Field = std::vector<double>;

// Nearest-valid fill: rows first (ties to the left), then columns for rows
// that had no valid pixel at all.
Field scanline_fill(const FloatImage& values, const MaskImage& mask) {
    const int w = values.width(), h = values.height();
    Field out(static_cast<std::size_t>(w) * h, 0.0);
    std::vector<char> filled(out.size(), 0);

    for (int y = 0; y < h; ++y) {
        const std::size_t base = static_cast<std::size_t>(y) * w;
        std::vector<int> ldist(w, -1), rdist(w, -1);
        std::vector<double> lval(w, 0.0), rval(w, 0.0);
        int last = -1;
        for (int x = 0; x < w; ++x) {
            if (mask.at(x, y) == kMaskValid) last = x;
            if (last >= 0) {
                ldist[x] = x - last;
                lval[x] = values.at(last, y);
            }
        }
        last = -1;
        for (int x = w - 1; x >= 0; --x) {
            if (mask.at(x, y) == kMaskValid) last = x;
            if (last >= 0) {
                rdist[x] = last - x;
                rval[x] = values.at(last, y);
            }
        }
        for (int x = 0; x < w; ++x) {
            if (ldist[x] < 0 && rdist[x] < 0) continue;  // row has no valid pixel
            double v;
            if (ldist[x] < 0) v = rval[x];
            else if (rdist[x] < 0) v = lval[x];
            else v = (ldist[x] <= rdist[x]) ? lval[x] : rval[x];
            out[base + x] = v;
            filled[base + x] = 1;
        }
    }

    // Column pass for fully-invalid rows, sourcing already-filled pixels.
    for (int x = 0; x < w; ++x) {
        int last = -1;
        for (int y = 0; y < h; ++y) {
            const std::size_t i = static_cast<std::size_t>(y) * w + x;
            if (filled[i]) last = y;
        }
        if (last < 0) continue;
        std::vector<int> udist(h, -1), ddist(h, -1);
        std::vector<double> uval(h, 0.0), dval(h, 0.0);
        last = -1;
        for (int y = 0; y < h; ++y) {
            const std::size_t i = static_cast<std::size_t>(y) * w + x;
            if (filled[i]) last = y;
            if (last >= 0) {
                udist[y] = y - last;
                uval[y] = out[static_cast<std::size_t>(last) * w + x];
            }
        }
        last = -1;
        for (int y = h - 1; y >= 0; --y) {
            const std::size_t i = static_cast<std::size_t>(y) * w + x;
            if (filled[i]) last = y;
            if (last >= 0) {
                ddist[y] = last - y;
                dval[y] = out[static_cast<std::size_t>(last) * w + x];
            }
        }
        for (int y = 0; y < h; ++y) {
            const std::size_t i = static_cast<std::size_t>(y) * w + x;
            if (filled[i]) continue;
            if (udist[y] < 0 && ddist[y] < 0) continue;
            if (udist[y] < 0) out[i] = dval[y];
            else if (ddist[y] < 0) out[i] = uval[y];
            else out[i] = (udist[y] <= ddist[y]) ? uval[y] : dval[y];
        }
    }
    return out;
}

// Solver state shared by the cascade and the refinement.
struct Solver {
    int w, h;
    double lambda;
    const simd::KernelTable& k;

    Field mass;         // data weights (1 or kHoleMass)
    Field wh;           // (x, x+1) guide weights, last column 0
    Field wv;           // (y, y+1) guide weights, last row 0
    Field mass_t, wh_t; // transposed-problem copies (w and h swapped)
    Field half_mass, half_mass_t;

    // Full-system stencil coefficients.
    Field s_diag, s_left, s_right, s_up, s_down;

    // Scratch.
    Field lower, diag, upper, cp, tbuf_a, tbuf_b;

    Solver(const MaskImage& mask, const GrayImage& guide, const WlsParams& params)
        : w(guide.width()), h(guide.height()), lambda(params.lambda),
          k(simd::kernels()) {
        const std::size_t n = static_cast<std::size_t>(w) * h;
        mass.resize(n);
        wh.assign(n, 0.0);
        wv.assign(n, 0.0);
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x) {
                const std::size_t i = static_cast<std::size_t>(y) * w + x;
                mass[i] = mask.at(x, y) == kMaskValid ? 1.0 : kHoleMass;
                if (x + 1 < w)
                    wh[i] = guide_weight(guide.at(x, y), guide.at(x + 1, y), params.sigma_color);
                if (y + 1 < h)
                    wv[i] = guide_weight(guide.at(x, y), guide.at(x, y + 1), params.sigma_color);
            }

        mass_t.resize(n);
        wh_t.resize(n);
        k.transpose_f64(mass.data(), w, h, mass_t.data());
        k.transpose_f64(wh.data(), w, h, wh_t.data());

        half_mass.resize(n);
        half_mass_t.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            half_mass[i] = 0.5 * mass[i];
            half_mass_t[i] = 0.5 * mass_t[i];
        }

        s_diag.resize(n);
        s_left.resize(n);
        s_right.resize(n);
        s_up.resize(n);
        s_down.resize(n);
        const double lam2 = 2.0 * lambda;
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x) {
                const std::size_t i = static_cast<std::size_t>(y) * w + x;
                const double wl = x > 0 ? lam2 * wh[i - 1] : 0.0;
                const double wr = x + 1 < w ? lam2 * wh[i] : 0.0;
                const double wu = y > 0 ? lam2 * wv[i - w] : 0.0;
                const double wd = y + 1 < h ? lam2 * wv[i] : 0.0;
                s_diag[i] = mass[i] + wl + wr + wu + wd;
                s_left[i] = -wl;
                s_right[i] = -wr;
                s_up[i] = -wu;
                s_down[i] = -wd;
            }

        lower.resize(n);
        diag.resize(n);
        upper.resize(n);
        cp.resize(n);
        tbuf_a.resize(n);
        tbuf_b.resize(n);
    }

    // Solves (pass_mass + lam * L_dir) u = rhs in place. pass_mass == null
    // means identity mass; rhs is not premultiplied by the mass here.
    void solve_lines(double* u, const double* pass_mass, const double* weights, int width,
                     int height, double lam, bool rhs_times_mass) {
        const double lam2 = 2.0 * lam;
        for (int i = 0; i < height; ++i)
            for (int x = 0; x < width; ++x) {
                const std::size_t idx = static_cast<std::size_t>(i) * width + x;
                const double wu = i > 0 ? lam2 * weights[idx - width] : 0.0;
                const double wd = i + 1 < height ? lam2 * weights[idx] : 0.0;
                const double m = pass_mass ? pass_mass[idx] : 1.0;
                lower[idx] = -wu;
                upper[idx] = -wd;
                diag[idx] = m + wu + wd;
                if (rhs_times_mass) u[idx] *= m;
            }
        k.tridiag_cols_f64(lower.data(), diag.data(), upper.data(), u, cp.data(), width, height);
    }

    void solve_vertical(double* u, const double* pass_mass, double lam, bool rhs_times_mass) {
        solve_lines(u, pass_mass, wv.data(), w, h, lam, rhs_times_mass);
    }

    void solve_horizontal(double* u, const double* pass_mass_t, double lam,
                          bool rhs_times_mass) {
        k.transpose_f64(u, w, h, tbuf_a.data());
        solve_lines(tbuf_a.data(), pass_mass_t, wh_t.data(), h, w, lam, rhs_times_mass);
        k.transpose_f64(tbuf_a.data(), h, w, u);
    }

    // out = S * u.
    void apply(const double* u, double* out) const {
        for (int y = 0; y < h; ++y) {
            const std::size_t b = static_cast<std::size_t>(y) * w;
            k.stencil5_row_f64(y > 0 ? u + b - w : nullptr, u + b,
                               y + 1 < h ? u + b + w : nullptr, s_left.data() + b,
                               s_diag.data() + b, s_right.data() + b,
                               y > 0 ? s_up.data() + b : nullptr,
                               y + 1 < h ? s_down.data() + b : nullptr, w, out + b);
        }
    }

    // z = (half_mass + lambda L_h)^-1 r + (half_mass + lambda L_v)^-1 r
    void precondition(const double* r, double* z, Field& scratch) {
        const std::size_t n = static_cast<std::size_t>(w) * h;
        std::copy(r, r + n, z);
        solve_horizontal(z, half_mass_t.data(), lambda, false);
        std::copy(r, r + n, scratch.data());
        solve_vertical(scratch.data(), half_mass.data(), lambda, false);
        for (std::size_t i = 0; i < n; ++i) z[i] += scratch[i];
    }
};

}  // namespace

stereo::DisparityMap wls_smooth(const stereo::DisparityMap& disparity, const GrayImage& guide,
                                const WlsParams& params) {
    params.validate();
    if (!disparity.values.same_size(disparity.validity) || !disparity.values.same_size(guide))
        raise(ErrorCategory::contract, "disparity/validity/guide size mismatch");
    const std::size_t valid = disparity.valid_count();
    if (valid == 0) raise(ErrorCategory::contract, "wls_smooth needs at least one valid pixel");

    const int w = disparity.width(), h = disparity.height();
    const std::size_t n = static_cast<std::size_t>(w) * h;
    const int T = params.iterations;

    Solver solver(disparity.validity, guide, params);
    const Field ftilde = scanline_fill(disparity.values, disparity.validity);

    // Cascade: the first pass anchors the masked data, later passes chain.
    Field u = ftilde;
    const double denom = std::pow(4.0, T) - 1.0;
    for (int t = 1; t <= T; ++t) {
        const double lam_t = 1.5 * params.lambda * std::pow(4.0, T - t) / denom;
        if (t == 1)
            solver.solve_horizontal(u.data(), solver.mass_t.data(), lam_t, true);
        else
            solver.solve_horizontal(u.data(), nullptr, lam_t, false);
        solver.solve_vertical(u.data(), nullptr, lam_t, false);
    }

    // Conjugate-gradient refinement of S u = mass .* ftilde.
    Field b(n);
    for (std::size_t i = 0; i < n; ++i) b[i] = solver.mass[i] * ftilde[i];
    double norm_b = 0.0;
    for (const double v : b) norm_b = std::max(norm_b, std::abs(v));

    Field r(n), z(n), p(n), q(n), scratch(n);
    solver.apply(u.data(), r.data());
    for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - r[i];

    auto inf_norm = [](const Field& f) {
        double m = 0.0;
        for (const double v : f) m = std::max(m, std::abs(v));
        return m;
    };

    if (norm_b > 0.0 && inf_norm(r) > params.refine_tolerance * norm_b) {
        solver.precondition(r.data(), z.data(), scratch);
        p = z;
        double rz = 0.0;
        for (std::size_t i = 0; i < n; ++i) rz += r[i] * z[i];
        for (int it = 0; it < params.max_refine_iterations; ++it) {
            solver.apply(p.data(), q.data());
            double pq = 0.0;
            for (std::size_t i = 0; i < n; ++i) pq += p[i] * q[i];
            if (!(pq > 0.0)) break;
            const double alpha = rz / pq;
            for (std::size_t i = 0; i < n; ++i) {
                u[i] += alpha * p[i];
                r[i] -= alpha * q[i];
            }
            if (inf_norm(r) <= params.refine_tolerance * norm_b) break;
            solver.precondition(r.data(), z.data(), scratch);
            double rz_next = 0.0;
            for (std::size_t i = 0; i < n; ++i) rz_next += r[i] * z[i];
            const double beta = rz_next / rz;
            rz = rz_next;
            for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
        }
    }

    // The exact minimizer obeys the maximum principle; keep the iterate
    // inside the valid input range.
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            if (disparity.validity.at(x, y) == kMaskValid) {
                lo = std::min(lo, static_cast<double>(disparity.values.at(x, y)));
                hi = std::max(hi, static_cast<double>(disparity.values.at(x, y)));
            }

    stereo::DisparityMap out{FloatImage(w, h, 0.0f), MaskImage(w, h, kMaskValid)};
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            out.values.at(x, y) =
                static_cast<float>(std::clamp(u[static_cast<std::size_t>(y) * w + x], lo, hi));
    return out;
}

}  // namespace corridor::wls
