#pragma once

// Identity suites behind `osc_spectra verify` and the acceptance harness.
// Every suite returns a measured defect; the report pairs it with a threshold
// from the tolerance table.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "oscspectra/projections.hpp"

namespace oscspectra {

struct ToleranceEntry {
    std::string id;
    std::string tag;
    double value;
    std::string description;
};

class ToleranceTable {
public:
    static ToleranceTable defaults();

    double operator[](std::string const& id) const;
    /// Throws std::invalid_argument for unknown ids.
    void set(std::string const& id, double value);
    std::vector<ToleranceEntry> const& entries() const { return entries_; }

private:
    std::vector<ToleranceEntry> entries_;
};

enum class Relation { below, at_most, at_least };
std::string to_string(Relation r);
bool satisfies(double value, Relation r, double threshold);

struct VerifyRow {
    std::string tag;
    std::string check;
    int n;
    int m;
    double value;
    double threshold;
    Relation relation;
    bool pass;
};

struct VerifyConfig {
    int n = 2;
    int m_max = 8;
    std::uint64_t seed = 1;
    ToleranceTable tol = ToleranceTable::defaults();
};

std::vector<VerifyRow> run_verify(VerifyConfig const& cfg);
bool all_pass(std::vector<VerifyRow> const& rows);

// individual suites

/// max |Phi_m - Phi~_m| / (1 + |Phi_m|) over random pairs in [-box, box]^n.
double kernel_equality_defect(int n, int m, int pairs, std::mt19937_64& rng, double box = 3.0);

/// max |sum_j Y_j(x) Y_j(y) - Z_s(x.y)| over random unit pairs (n <= 3).
double addition_theorem_defect(int n, int s, int pairs, std::mt19937_64& rng);

/// |Z_s(1) - d_s / |S^{n-1}|| relative to d_s / |S^{n-1}|.
double zonal_pole_defect(int n, int s);

/// max |<phi_a, phi_b> - delta_ab| over all polar indices of level <= m_max, by a tensor Gauss-Hermite rule.
double polar_gram_defect(int n, int m_max, int line_nodes = 20);

/// Smallest observed convergence order of the finite-difference oscillator
/// residual of every phi (n <= 3) or h_alpha (n > 3) with level <= m_max,
/// steps h, h/2, h/4, residuals aggregated over `points` random points.
double fd_min_order(int n, int m_max, int points, std::mt19937_64& rng, double h = 0.2);

struct HeckeDefects {
    double closed_form;  // max |closed form - generic polar projection|
    double off_pattern;  // max |generic projection| at levels m < M or m - M odd
};
/// Degrees M <= M_max (M <= 1 for n = 1), K <= K_max, levels <= m_max.
HeckeDefects hecke_defects(int n, int M_max, int K_max, int m_max, int points, std::mt19937_64& rng);

/// n = 1: max |two-branch projection - generic projection| for m <= m_max; +inf when a
/// level is not carried by exactly one (k, s = m mod 2) pair.
double one_dim_defect(int m_max, int points, std::mt19937_64& rng);

/// max rotation-commutation discrepancy over `rotations` random g (the first
/// `reflections` with determinant -1), levels m <= m_max, for a random
/// combination of Hermite functions of level <= band.
double rotation_defect(int n, int m_max, int band, int rotations, int reflections, std::mt19937_64& rng);

struct ParsevalDefects {
    double band_limited;     // |norm^2 - sum c^2| for a polar combination inside the band
    double cross_basis;      // same for h_gamma expanded in the polar basis
    double bessel_increase;  // max increase of the bump's defect as truncation grows
};
ParsevalDefects parseval_defects(int n, int m_max, std::mt19937_64& rng);

struct DecayContrast {
    DecayTable bump;
    DecayTable truncated;
};
/// Bump and truncated Gaussian on the unit ball, levels 0..levels-1.
DecayContrast decay_contrast(int n, int levels);

struct SpanDefects {
    int rank_mismatch;  // |rank V - rank V~| + |rank [V; V~] - rank V|
    double inclusion;   // worst least-squares residual of a V~ generator against V
    int planted_rank_gain;  // rank gain after planting x1^m (>= 1 means detected; -1 when not applicable)
};
SpanDefects span_defects(int n, int m, double svd_tol);

}  // namespace oscspectra
