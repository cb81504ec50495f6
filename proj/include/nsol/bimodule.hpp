#pragma once

// Floating-point checks of the finite-stage bimodule X_{2n} over
// A_{beta_{2n}} (left) and A_{alpha_{2n}} (right). Elements of the dense
// subspace are finite sums f delta_j with f a modulated, dilated, translated
// piecewise-linear hat, so every sum over Z below has an exact finite range.

#include "nsol/exactnum.hpp"
#include "nsol/morita.hpp"
#include "nsol/solenoid.hpp"

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace nsol {

using cplx = std::complex<double>;

/// Continuous piecewise-linear function, zero outside [front, back] of the breakpoints.
class HatFn {
public:
    HatFn(std::vector<Rat> breakpoints, std::vector<cplx> values);

    cplx operator()(double x) const;
    double lo() const { return xs_.front(); }
    double hi() const { return xs_.back(); }
    const std::vector<Rat>& breakpoints() const { return breaks_; }

private:
    std::vector<Rat> breaks_;
    std::vector<double> xs_;
    std::vector<cplx> ys_;
};

/// coeff * hat(s t + u) * e^{2 pi i (omega t + phi)}, s > 0.
struct Atom {
    std::shared_ptr<const HatFn> hat;
    double s = 1.0;
    double u = 0.0;
    cplx coeff = 1.0;
    double omega = 0.0;
    double phi = 0.0;

    cplx operator()(double t) const;
    double lo() const { return (hat->lo() - u) / s; }
    double hi() const { return (hat->hi() - u) / s; }
    friend bool operator==(const Atom&, const Atom&) = default;
};

/// sum_j f_j delta_j in C_c(R x Z_c).
class ModElem {
public:
    explicit ModElem(long modulus = 1);

    long modulus() const { return modulus_; }
    long reduce(long j) const;
    const std::map<long, std::vector<Atom>>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add(long j, Atom atom);
    static ModElem single(long modulus, long j, std::shared_ptr<const HatFn> hat);

    cplx operator()(double t, long m) const;
    /// Union of the t-supports; {0, 0} for the zero element.
    std::pair<double, double> support() const;

    /// (t, [m]) -> F(t - tau, [m - shift]).
    ModElem translated(double tau, long shift) const;
    /// Multiplies class j by e^{2 pi i (omega t + phase(j))}.
    ModElem modulated(double omega, const std::function<double(long)>& phase) const;
    ModElem scaled(cplx factor) const;

    friend ModElem operator+(const ModElem& a, const ModElem& b);
    friend bool operator==(const ModElem&, const ModElem&) = default;

private:
    long modulus_;
    std::map<long, std::vector<Atom>> terms_;
};

/// Finitely supported k -> 1-periodic function of r; sum_k A_k(V) U^k.
class AlgElem {
public:
    using Component = std::function<cplx(double)>;

    AlgElem() = default;
    static AlgElem identity();

    void set(long k, Component f) { comps_[k] = std::move(f); }
    const std::map<long, Component>& components() const { return comps_; }
    /// Zero for k outside the support.
    cplx operator()(long k, double r) const;

private:
    std::map<long, Component> comps_;
};

enum class Gen { U, V };

/// Exact stage data of X_{2n}, lowered once to doubles for kernel evaluation.
struct BimCtx {
    SolenoidSpec spec;
    ProjectionData proj;
    std::size_t n = 0;

    Int c, d, a, b;
    QuadReal alpha, beta, gamma;

    long modulus = 1;  // |c|
    long d_l = 0;
    long a_mod = 0;  // a mod |c|
    double c_d = 1, alpha_d = 0, beta_d = 0, gamma_d = 1;
    double right_v_freq = 1;  // 1/(gamma c)
};

BimCtx make_context(const SolenoidSpec& spec, const ProjectionData& proj, std::size_t n);

ModElem act_left_gen(const BimCtx& ctx, Gen gen, long power, const ModElem& F);
ModElem act_right_gen(const BimCtx& ctx, Gen gen, long power, const ModElem& F);

/// (A . F)(t, [m]) = sum_k A_k((t - a m)/c) F(t - k gamma, [m - k]).
cplx act_left_eval(const BimCtx& ctx, const AlgElem& A, const ModElem& F, double t, long m);
/// (F . B)(t, [m]) = sum_k F(t - k, [m - d k]) B_k(((t - k)/gamma - (m - d k))/c).
cplx act_right_eval(const BimCtx& ctx, const ModElem& F, const AlgElem& B, double t, long m);

AlgElem inner_left(const BimCtx& ctx, const ModElem& F1, const ModElem& F2);
AlgElem inner_right(const BimCtx& ctx, const ModElem& F1, const ModElem& F2);

/// X_{2n} -> X_{2n+2}: f delta_j -> p^{-1/2} sum_i f(t/p) delta_{jp + i c0 p^{2n+1}}.
ModElem iota_embed(const BimCtx& ctx_n, const ModElem& F);

/// A_k -> component at k p, r -> A_k(p r).
AlgElem phi_embed(unsigned long p, const AlgElem& A);

/// (A * B)_k(r) = sum_l A_l(r) B_{k-l}(r + l angle).
AlgElem convolve(const AlgElem& A, const AlgElem& B, double angle);

struct SamplePlan {
    std::uint64_t seed = 0;
    std::size_t functions = 20;  // random trials, each with fresh hats
    std::size_t points = 200;    // random points per trial on top of the grid
    std::size_t grid = 64;       // uniform r points per period, dyadic t offsets
    bool zero_functions = false;
};

struct IdentityReport {
    std::map<std::string, double> max_error;  // identity -> max |lhs - rhs|
    /// Not part of pass(): (c) and (d) with the level-(n+1) side multiplied by p.
    std::map<std::string, double> diagnostics;
    double corrupted_gamma_deviation = 0;
    std::size_t samples = 0;
    std::size_t hat_functions = 0;

    bool pass(double tol) const;
};

IdentityReport identity_suite(const SolenoidSpec& spec, const ProjectionData& proj, std::size_t n,
                              const SamplePlan& plan);

}  // namespace nsol
