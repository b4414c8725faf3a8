#include "disi/schedule.hpp"

#include <cmath>
#include <sstream>

#include "disi/errors.hpp"
#include "disi/vec.hpp"

namespace disi {

GvpSchedule::GvpSchedule(double rho, double sigma_d) : rho_(rho), sigma_d_(sigma_d) {
    if (!(std::abs(rho) < 1.0)) {
        std::ostringstream os;
        os << "correlation rho must satisfy |rho| < 1, got " << rho;
        throw DomainError(os.str());
    }
    if (!(sigma_d > 0.0) || !std::isfinite(sigma_d)) {
        std::ostringstream os;
        os << "sigma_d must be positive, got " << sigma_d;
        throw DomainError(os.str());
    }
    phi_ = std::acos(rho) / 2.0;
    inv_plus_ = 1.0 / std::sqrt(2.0 * (1.0 + rho));
    inv_minus_ = 1.0 / std::sqrt(2.0 * (1.0 - rho));
}

double GvpSchedule::alpha(double r) const {
    if (r == -phi_) return 1.0;
    if (r == phi_) return 0.0;
    return std::cos(r) * inv_plus_ - std::sin(r) * inv_minus_;
}

double GvpSchedule::beta(double r) const {
    if (r == -phi_) return 0.0;
    if (r == phi_) return 1.0;
    return std::cos(r) * inv_plus_ + std::sin(r) * inv_minus_;
}

double GvpSchedule::dalpha(double r) const {
    return -std::sin(r) * inv_plus_ - std::cos(r) * inv_minus_;
}

double GvpSchedule::dbeta(double r) const {
    return -std::sin(r) * inv_plus_ + std::cos(r) * inv_minus_;
}

bool GvpSchedule::in_domain(double r, double g) const {
    return r >= -phi_ && r <= phi_ && g >= 0.0 && g <= kHalfPi;
}

void GvpSchedule::check_domain(double r, double g) const {
    if (!in_domain(r, g)) {
        std::ostringstream os;
        os.precision(17);
        os << "(r, g) = (" << r << ", " << g << ") outside [-" << phi_ << ", " << phi_
           << "] x [0, pi/2]";
        throw DomainError(os.str());
    }
}

CoeffSet GvpSchedule::coeffs(double r, double g) const {
    check_domain(r, g);
    return {alpha(r), beta(r), gen_lambda(g), gen_gamma(g)};
}

CoeffDerivs GvpSchedule::coeff_derivs(double r, double g) const {
    check_domain(r, g);
    return {dalpha(r), dbeta(r), -gen_gamma(g), gen_lambda(g)};
}

double gen_lambda(double g) {
    if (g == 0.0) return 1.0;
    if (g == kHalfPi) return 0.0;
    return std::cos(g);
}

double gen_gamma(double g) {
    if (g == 0.0) return 0.0;
    if (g == kHalfPi) return 1.0;
    return std::sin(g);
}

}  // namespace disi
