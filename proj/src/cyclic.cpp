#include "cfgn/cyclic.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "cfgn/error.hpp"

namespace cfgn {

namespace {

constexpr double pi = std::numbers::pi;
constexpr complex i_unit{0.0, 1.0};

} // namespace

CyclicFrequencySet cyclic_frequencies(const CfgnParams& cp) noexcept {
    return {{0.0, 2.0 * cp.lambda0(), -2.0 * cp.lambda0()}};
}

CyclicFrequency classify_cyclic_frequency(double alpha, const CfgnParams& cp) {
    const auto set = cyclic_frequencies(cp);
    for (CyclicFrequency a : {CyclicFrequency::zero, CyclicFrequency::plus, CyclicFrequency::minus}) {
        if (std::abs(alpha - set.value(a)) <= branch_tolerance) return a;
    }
    throw Error(ErrorKind::unknown_cyclic_frequency,
                "alpha = " + std::to_string(alpha) + " is not in {0, +-2 lambda0}");
}

std::optional<long> modulation_period(double lambda0) {
    const double x = lambda0 / pi;
    for (long q = 1; q <= 100000; ++q) {
        const double pq = x * static_cast<double>(q);
        if (std::abs(pq - std::round(pq)) <= 1e-9 * static_cast<double>(q)) return q;
    }
    return std::nullopt;
}

CyclicModel::CyclicModel(const CfgnParams& cp, SpectralOptions spectral)
    : params_(cp), covariance_(cp.base()), spectral_opts_(spectral) {}

double CyclicModel::scaled_gamma(long h, Coord j, Coord k) const {
    return params_.amplitude(j) * params_.amplitude(k) * covariance_.fgn(h, j, k);
}

const SpectralConstants& CyclicModel::spectral() const {
    if (!spectral_) spectral_ = spectral_constants(params_.base());
    return *spectral_;
}

complex CyclicModel::scaled_density(double lambda, Coord j, Coord k) const {
    return params_.amplitude(j) * params_.amplitude(k)
         * fgn_spectral_density(lambda, j, k, params_.base(), spectral(), spectral_opts_);
}

AcvfValue CyclicModel::acvf(long n, long h) const {
    if (n < 0 || h < 0) throw Error(ErrorKind::domain_error, "acvf needs n, h >= 0");
    const double g11 = scaled_gamma(h, Coord::first, Coord::first);
    const double g22 = scaled_gamma(h, Coord::second, Coord::second);
    // g12 = Cov(b1(n), b2(n+h)) enters through E[b2(n+h) b1(n)]; g21 through E[b1(n+h) b2(n)].
    const double g12 = scaled_gamma(h, Coord::first, Coord::second);
    const double g21 = scaled_gamma(h, Coord::second, Coord::first);
    const double l0 = params_.lambda0();
    const double lag_phase = l0 * static_cast<double>(h);
    const double time_phase = l0 * static_cast<double>(2 * n + h);

    AcvfValue v;
    v.stationary = 0.5 * ((g11 + g22) * std::cos(lag_phase) + (g12 - g21) * std::sin(lag_phase));
    v.cyclic = 0.5 * ((g11 - g22) * std::cos(time_phase) + (g12 + g21) * std::sin(time_phase));
    v.total = v.stationary + v.cyclic;
    return v;
}

complex CyclicModel::caf(CyclicFrequency alpha, long h) const {
    if (h < 0) throw Error(ErrorKind::domain_error, "caf takes h >= 0; use R(-h) = e^{-i alpha h} R(h)");
    if (alpha == CyclicFrequency::zero) return {acvf(0, h).stationary, 0.0};
    const double g11 = scaled_gamma(h, Coord::first, Coord::first);
    const double g22 = scaled_gamma(h, Coord::second, Coord::second);
    const double gsum = scaled_gamma(h, Coord::first, Coord::second) + scaled_gamma(h, Coord::second, Coord::first);
    const complex r = std::polar(0.25, params_.lambda0() * static_cast<double>(h)) * complex(g11 - g22, -gsum);
    return alpha == CyclicFrequency::plus ? r : std::conj(r);
}

complex CyclicModel::cyclic_spectrum(CyclicFrequency alpha, double lambda) const {
    const double l0 = params_.lambda0();
    switch (alpha) {
    case CyclicFrequency::zero: {
        double total = 0.0;
        for (double s : {-1.0, 1.0}) {
            const double w = lambda - s * l0;
            total += scaled_density(w, Coord::first, Coord::first).real()
                   + scaled_density(w, Coord::second, Coord::second).real()
                   - 2.0 * s * scaled_density(w, Coord::first, Coord::second).imag();
        }
        return {0.25 * total, 0.0};
    }
    case CyclicFrequency::plus: {
        const double w = lambda - l0;
        return 0.25
             * (scaled_density(w, Coord::first, Coord::first).real()
                - scaled_density(w, Coord::second, Coord::second).real()
                - 2.0 * i_unit * scaled_density(w, Coord::first, Coord::second).real());
    }
    case CyclicFrequency::minus:
        return std::conj(cyclic_spectrum(CyclicFrequency::plus, -lambda));
    }
    return {};
}

const AsymptoteCoeffs& CyclicModel::time_asymptote() const {
    if (time_asymptote_) return *time_asymptote_;
    const ProcessParams& p = params_.base();
    const CrossStructure& cs = covariance_.cross();
    AsymptoteCoeffs a;
    for (Coord j : {Coord::first, Coord::second}) {
        for (Coord k : {Coord::first, Coord::second}) {
            const double hs = p.hurst_sum(j, k);
            a.c[index(j)][index(k)] = params_.amplitude(j) * params_.amplitude(k) * p.sigma(j) * p.sigma(k)
                                    * cs.rho(j, k) * hs * (hs - 1.0) / 2.0;
        }
    }
    const double c11 = a.c[0][0], c22 = a.c[1][1], c12 = a.c[0][1], c21 = a.c[1][0];
    a.a_stat = 0.5 * std::hypot(c11 + c22, c12 - c21);
    a.phi_stat = std::atan2(c12 - c21, c11 + c22);
    a.a_cyc = 0.5 * std::hypot(c11 - c22, c12 + c21);
    a.phi_cyc = std::atan2(c12 + c21, c11 - c22);
    time_asymptote_ = a;
    return *time_asymptote_;
}

const AsymptoteCoeffs& CyclicModel::asymptote_coeffs() const {
    if (asymptote_) return *asymptote_;
    AsymptoteCoeffs a = time_asymptote();
    const SpectralConstants& sc = spectral();
    const double d1 = sc.d[0], d2 = sc.d[1];
    const double s11 = params_.a1() * params_.a1() * sc.c(Coord::first, Coord::first).real();
    const double s22 = params_.a2() * params_.a2() * sc.c(Coord::second, Coord::second).real();
    const double s12re = params_.a1() * params_.a2() * sc.c(Coord::first, Coord::second).real();
    a.d_max = std::max(d1, d2);
    if (std::abs(d1 - d2) <= branch_tolerance) {
        a.k = 0.25 * complex(s11 - s22, -2.0 * s12re);
    } else if (d1 > d2) {
        a.k = s11 / 4.0;
    } else {
        a.k = -s22 / 4.0;
    }
    asymptote_ = a;
    return *asymptote_;
}

double CyclicModel::acvf_asymptote(long n, long h) const {
    if (h < 1) throw Error(ErrorKind::domain_error, "acvf asymptote needs h >= 1");
    const AsymptoteCoeffs& a = time_asymptote();
    const ProcessParams& p = params_.base();
    const double l0 = params_.lambda0();
    const double hd = static_cast<double>(h);
    const double lag_phase = l0 * hd;
    const double time_phase = l0 * static_cast<double>(2 * n + h);
    const double h1 = p.hurst1(), h2 = p.hurst2();
    if (std::abs(h1 - h2) <= branch_tolerance) {
        return std::pow(hd, 2.0 * h1 - 2.0)
             * (a.a_stat * std::cos(lag_phase - a.phi_stat) + a.a_cyc * std::cos(time_phase - a.phi_cyc));
    }
    if (h1 > h2) return a.c[0][0] / 2.0 * std::pow(hd, 2.0 * h1 - 2.0) * (std::cos(lag_phase) + std::cos(time_phase));
    return a.c[1][1] / 2.0 * std::pow(hd, 2.0 * h2 - 2.0) * (std::cos(lag_phase) - std::cos(time_phase));
}

complex CyclicModel::cyclic_spectrum_asymptote(double lambda) const {
    const double offset = std::abs(lambda - params_.lambda0());
    if (!(offset > 0.0 && offset < 0.2)) {
        throw Error(ErrorKind::domain_error, "cyclic spectrum asymptote needs 0 < |lambda - lambda0| < 0.2");
    }
    const AsymptoteCoeffs& a = asymptote_coeffs();
    return a.k * std::pow(offset, -2.0 * a.d_max);
}

AcvfValue acvf(long n, long h, const CfgnParams& cp) { return CyclicModel(cp).acvf(n, h); }

complex caf(double alpha, long h, const CfgnParams& cp) {
    return CyclicModel(cp).caf(classify_cyclic_frequency(alpha, cp), h);
}

complex cyclic_spectrum(double alpha, double lambda, const CfgnParams& cp, double rel_tol) {
    SpectralOptions opt;
    opt.rel_tol = rel_tol;
    return CyclicModel(cp, opt).cyclic_spectrum(classify_cyclic_frequency(alpha, cp), lambda);
}

AsymptoteCoeffs asymptote_coeffs(const CfgnParams& cp) { return CyclicModel(cp).asymptote_coeffs(); }

double acvf_asymptote(long n, long h, const CfgnParams& cp) { return CyclicModel(cp).acvf_asymptote(n, h); }

complex cyclic_spectrum_asymptote(double lambda, const CfgnParams& cp) {
    return CyclicModel(cp).cyclic_spectrum_asymptote(lambda);
}

} // namespace cfgn
