#pragma once

#include <stdexcept>
#include <string>

namespace oplab {

/// Bad or inconsistent user configuration (file keys, CLI flags, ranges).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Every mode of the linearized dynamics decays: the noise is at or above
/// the critical strength and no cluster predictions exist.
class AllModesStable : public std::runtime_error {
public:
    explicit AllModesStable(const std::string& what) : std::runtime_error(what) {}
};

/// An operation that requires a positive growth rate was called in the
/// stable regime.
class NotUnstable : public std::runtime_error {
public:
    explicit NotUnstable(const std::string& what) : std::runtime_error(what) {}
};

/// Cluster statistics that need at least two members were asked of a
/// smaller cluster.
class DegenerateCluster : public std::runtime_error {
public:
    explicit DegenerateCluster(const std::string& what) : std::runtime_error(what) {}
};

/// The empirical width series never shows a clustering transition.
class NoOnset : public std::runtime_error {
public:
    explicit NoOnset(const std::string& what) : std::runtime_error(what) {}
};

/// The k = 0 Fourier mode is identically zero and carries no statistics.
class ZeroMode : public std::runtime_error {
public:
    explicit ZeroMode(const std::string& what) : std::runtime_error(what) {}
};

/// A linear-theory comparison was requested past the clustering onset,
/// where the linearization no longer applies.
class OnsetExceeded : public std::runtime_error {
public:
    explicit OnsetExceeded(const std::string& what) : std::runtime_error(what) {}
};

} // namespace oplab
