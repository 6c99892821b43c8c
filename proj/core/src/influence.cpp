#include "oplab/influence.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "oplab/errors.hpp"

namespace oplab {

namespace {

constexpr double coverage_tol = 1e-12;

// integral over [a,b] of s^n sin(q s) ds for all n in [0, n_max], q >= q_switch.
// Upward integration-by-parts recurrence; amplification is bounded by
// n_max! / q^n_max, which stays below ~1e4 for q >= 2 and degrees <= 8.
void moments_by_recurrence(double q, double a, double b, int n_max,
                           std::vector<double>& sin_mom, std::vector<double>& cos_mom) {
    const double sa = std::sin(q * a), ca = std::cos(q * a);
    const double sb = std::sin(q * b), cb = std::cos(q * b);
    sin_mom.assign(n_max + 1, 0.0);
    cos_mom.assign(n_max + 1, 0.0);
    sin_mom[0] = (ca - cb) / q;
    cos_mom[0] = (sb - sa) / q;
    double apow = 1.0, bpow = 1.0;  // a^n, b^n
    for (int n = 1; n <= n_max; ++n) {
        apow *= a;
        bpow *= b;
        sin_mom[n] = (apow * ca - bpow * cb) / q + n / q * cos_mom[n - 1];
        cos_mom[n] = (bpow * sb - apow * sa) / q - n / q * sin_mom[n - 1];
    }
}

// Same moments through the Maclaurin series of sin(q s); used for small q
// where the recurrence would divide by q repeatedly.
double sin_moment_by_series(double q, double a, double b, int n) {
    double coeff = q;  // (-1)^j q^(2j+1) / (2j+1)!
    double total = 0.0;
    for (int j = 0; j < 60; ++j) {
        const int p = n + 2 * j + 2;
        total += coeff * (std::pow(b, p) - std::pow(a, p)) / p;
        coeff *= -q * q / ((2.0 * j + 2.0) * (2.0 * j + 3.0));
        if (std::abs(coeff) < 1e-19) {
            break;
        }
    }
    return total;
}

constexpr double q_switch = 2.0;

} // namespace

InfluenceShape::InfluenceShape(std::string name, std::vector<PolynomialPiece> pieces)
    : name_(std::move(name)), pieces_(std::move(pieces)) {
    if (pieces_.empty()) {
        throw std::invalid_argument("InfluenceShape: no pieces");
    }
    if (std::abs(pieces_.front().lo) > coverage_tol ||
        std::abs(pieces_.back().hi - 1.0) > coverage_tol) {
        throw std::invalid_argument("InfluenceShape: pieces must cover [0, 1]");
    }
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        if (!(pieces_[i].lo < pieces_[i].hi)) {
            throw std::invalid_argument("InfluenceShape: empty piece interval");
        }
        if (pieces_[i].coeffs.empty()) {
            throw std::invalid_argument("InfluenceShape: piece without coefficients");
        }
        if (i + 1 < pieces_.size() &&
            std::abs(pieces_[i].hi - pieces_[i + 1].lo) > coverage_tol) {
            throw std::invalid_argument("InfluenceShape: pieces must tile [0, 1] without gaps");
        }
    }
}

double InfluenceShape::operator()(double s) const {
    if (s < 0.0 || s > 1.0) {
        return 0.0;
    }
    // First piece whose right edge lies beyond s; s == 1 falls to the last piece.
    auto it = std::partition_point(pieces_.begin(), pieces_.end(),
                                   [s](const PolynomialPiece& p) { return p.hi <= s; });
    if (it == pieces_.end()) {
        it = std::prev(pieces_.end());
    }
    double v = 0.0;
    for (auto c = it->coeffs.rbegin(); c != it->coeffs.rend(); ++c) {
        v = v * s + *c;
    }
    return v;
}

double InfluenceShape::integral_s_sin(double q) const {
    if (q == 0.0) {
        return 0.0;
    }
    if (q < 0.0) {
        return -integral_s_sin(-q);
    }
    double total = 0.0;
    std::vector<double> sin_mom, cos_mom;
    for (const auto& piece : pieces_) {
        const int deg = static_cast<int>(piece.coeffs.size()) - 1;
        if (q >= q_switch) {
            moments_by_recurrence(q, piece.lo, piece.hi, deg + 1, sin_mom, cos_mom);
            for (int m = 0; m <= deg; ++m) {
                total += piece.coeffs[m] * sin_mom[m + 1];
            }
        } else {
            for (int m = 0; m <= deg; ++m) {
                total += piece.coeffs[m] * sin_moment_by_series(q, piece.lo, piece.hi, m + 1);
            }
        }
    }
    return total;
}

double InfluenceShape::second_moment() const {
    double total = 0.0;
    for (const auto& piece : pieces_) {
        for (std::size_t m = 0; m < piece.coeffs.size(); ++m) {
            const double p = static_cast<double>(m) + 3.0;
            total += piece.coeffs[m] * (std::pow(piece.hi, p) - std::pow(piece.lo, p)) / p;
        }
    }
    return total;
}

InfluenceShape InfluenceShape::scaled_by(double c) const {
    std::vector<PolynomialPiece> scaled = pieces_;
    for (auto& piece : scaled) {
        for (auto& coeff : piece.coeffs) {
            coeff *= c;
        }
    }
    return InfluenceShape(name_ + "_scaled", std::move(scaled));
}

const std::map<std::string, InfluenceShape>& builtin_shapes() {
    static const std::map<std::string, InfluenceShape> shapes = [] {
        const double r = 1.0 / std::numbers::sqrt2;
        std::map<std::string, InfluenceShape> m;
        m.emplace("phi1", InfluenceShape("phi1", {{0.0, r, {1.0}}, {r, 1.0, {0.1}}}));
        m.emplace("phi2", InfluenceShape("phi2", {{0.0, 1.0, {1.0}}}));
        m.emplace("phi3", InfluenceShape("phi3", {{0.0, r, {0.5}}, {r, 1.0, {1.0}}}));
        m.emplace("phi4", InfluenceShape("phi4", {{0.0, r, {0.1}}, {r, 1.0, {1.0}}}));
        // (1 - s)^3 and (1 - s)^6 expanded in the monomial basis.
        m.emplace("phi5", InfluenceShape("phi5", {{0.0, 1.0, {1.0, -3.0, 3.0, -1.0}}}));
        m.emplace("phi6", InfluenceShape(
                              "phi6", {{0.0, 1.0, {1.0, -6.0, 15.0, -20.0, 15.0, -6.0, 1.0}}}));
        return m;
    }();
    return shapes;
}

InfluenceShape table_shape(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("influence table: cannot open '" + path + "'");
    }
    std::vector<std::pair<double, double>> rows;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream ss(line);
        double s, v;
        if (!(ss >> s)) {
            continue;  // blank or comment-only line
        }
        if (!(ss >> v)) {
            throw ConfigError("influence table: line " + std::to_string(line_no) +
                              ": expected two columns");
        }
        if (s < 0.0 || s > 1.0) {
            throw ConfigError("influence table: line " + std::to_string(line_no) +
                              ": s must lie in [0, 1]");
        }
        if (v < 0.0) {
            throw ConfigError("influence table: line " + std::to_string(line_no) +
                              ": phi0 must be nonnegative");
        }
        if (!rows.empty() && s <= rows.back().first) {
            throw ConfigError("influence table: line " + std::to_string(line_no) +
                              ": s must be strictly increasing");
        }
        rows.emplace_back(s, v);
    }
    if (rows.empty()) {
        throw ConfigError("influence table: '" + path + "' has no data rows");
    }
    std::vector<PolynomialPiece> pieces;
    double lo = 0.0;  // extends the first sample left to s = 0
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const double hi = (i + 1 < rows.size()) ? rows[i + 1].first : 1.0;
        if (hi > lo) {
            pieces.push_back({lo, hi, {rows[i].second}});
        }
        lo = hi;
    }
    return InfluenceShape("table:" + path, std::move(pieces));
}

InfluenceShape shape_from_spec(const std::string& spec) {
    if (spec.rfind("table:", 0) == 0) {
        return table_shape(spec.substr(6));
    }
    const auto& builtins = builtin_shapes();
    auto it = builtins.find(spec);
    if (it == builtins.end()) {
        throw ConfigError("influence: unknown shape '" + spec +
                          "' (expected phi1..phi6 or table:<path>)");
    }
    return it->second;
}

} // namespace oplab
