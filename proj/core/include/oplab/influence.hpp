#pragma once

#include <map>
#include <string>
#include <vector>

namespace oplab {

/// One polynomial piece of an influence profile. The piece covers
/// [lo, hi) -- the last piece of a shape additionally owns s = hi.
struct PolynomialPiece {
    double lo = 0.0;
    double hi = 1.0;
    std::vector<double> coeffs;  // c0 + c1 s + c2 s^2 + ...
};

/// Normalized influence profile phi0 on [0, 1], stored piecewise-polynomial.
///
/// The pieces must cover [0, 1] exactly and without overlap; evaluation
/// outside [0, 1] is exactly zero. Immutable after construction, so instances
/// can be shared freely across threads.
class InfluenceShape {
public:
    InfluenceShape(std::string name, std::vector<PolynomialPiece> pieces);

    /// phi0(s). Zero outside [0, 1]; breakpoints follow the left-closed
    /// convention except s = 1, which belongs to the last piece.
    double operator()(double s) const;

    /// integral over [0,1] of phi0(s) s sin(q s) ds, closed form per piece.
    /// Antisymmetric in q; absolute accuracy better than 1e-10 over the
    /// frequency ranges the stability scan uses.
    double integral_s_sin(double q) const;

    /// integral over [0,1] of s^2 phi0(s) ds, exact per-piece antiderivative.
    double second_moment() const;

    double at_zero() const { return (*this)(0.0); }

    /// Same profile multiplied by c >= 0.
    InfluenceShape scaled_by(double c) const;

    const std::string& name() const { return name_; }
    const std::vector<PolynomialPiece>& pieces() const { return pieces_; }

private:
    std::string name_;
    std::vector<PolynomialPiece> pieces_;
};

/// Influence function phi(r) = phi0(r / radius), supported on [0, radius].
struct ScaledInfluence {
    InfluenceShape shape;
    double radius = 1.0;  // R0 > 0

    double operator()(double r) const { return shape(r / radius); }
};

/// The six built-in profiles "phi1" ... "phi6".
const std::map<std::string, InfluenceShape>& builtin_shapes();

/// Piecewise-constant shape from a two-column text file (s, phi0(s)) with
/// strictly increasing s in [0, 1]. Row i's value holds on [s_i, s_{i+1});
/// the first value extends left to 0 and the last one right to 1.
InfluenceShape table_shape(const std::string& path);

/// Resolve a selection string: a builtin name or "table:<path>".
InfluenceShape shape_from_spec(const std::string& spec);

} // namespace oplab
