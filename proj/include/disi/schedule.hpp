#pragma once

namespace disi {

struct CoeffSet {
    double alpha;
    double beta;
    double lambda;
    double gamma;
};

/// d/dr of alpha, beta and d/dg of lambda, gamma.
struct CoeffDerivs {
    double dalpha;
    double dbeta;
    double dlambda;
    double dgamma;
};

/// Generalized variance-preserving coefficient schedule.
///
/// The data part alpha(r)*x0 + beta(r)*x1 keeps unit variance for unit-variance
/// inputs with correlation rho; the generation part mixes it with noise through
/// (cos g, sin g). The regression time runs over [-phi, phi] with
/// phi = arccos(rho) / 2, the generation time over [0, pi/2].
///
/// Immutable after construction; every member function is pure.
class GvpSchedule {
public:
    /// Throws DomainError unless |rho| < 1 and sigma_d > 0.
    GvpSchedule(double rho, double sigma_d);

    double rho() const { return rho_; }
    double sigma_d() const { return sigma_d_; }
    double phi() const { return phi_; }

    /// alpha(r), beta(r) without range checks; r = -phi and r = phi return the
    /// exact boundary values (1, 0) and (0, 1).
    double alpha(double r) const;
    double beta(double r) const;
    double dalpha(double r) const;
    double dbeta(double r) const;

    bool in_domain(double r, double g) const;

    /// Throws DomainError if (r, g) lies outside [-phi, phi] x [0, pi/2].
    CoeffSet coeffs(double r, double g) const;
    CoeffDerivs coeff_derivs(double r, double g) const;

    void check_domain(double r, double g) const;

private:
    double rho_;
    double sigma_d_;
    double phi_;
    double inv_plus_;   // 1 / sqrt(2 (1 + rho))
    double inv_minus_;  // 1 / sqrt(2 (1 - rho))
};

/// lambda(g) = cos g, gamma(g) = sin g with exact values at 0 and pi/2.
double gen_lambda(double g);
double gen_gamma(double g);

}  // namespace disi
