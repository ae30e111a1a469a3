#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "costsense/divergence.hpp"

namespace costsense {

struct PlanarPoint {
    double x = 0.0;
    double y = 0.0;
};

struct PlanarPointSet {
    std::vector<PlanarPoint> points;
};

// One binary-experiment divergence pair with its generating (p,q).
struct J2Sample {
    double p = 0.0;
    double q = 0.0;
    double x = 0.0;
    double y = 0.0;
};

// Convex hull with counterclockwise vertex order; degenerate inputs give a
// single vertex or a segment.
struct Hull2D {
    std::vector<PlanarPoint> vertices;

    bool contains(const PlanarPoint& pt, double tol) const;
};

// Both divergences evaluated over all binary pairs P=(p,1-p), Q=(q,1-q)
// with p,q on a uniform grid over [0,1] including the endpoints. Pairs
// where either divergence is infinite are skipped.
std::vector<J2Sample> sample_j2(const DivergenceKind& kind_x,
                                const DivergenceKind& kind_y, int grid);

PlanarPointSet to_point_set(const std::vector<J2Sample>& samples);

// Monotone chain with lexicographic (x, then y) ordering and cross-product
// collinearity tolerance 1e-12; collinear interior points are dropped.
Hull2D convex_hull(const PlanarPointSet& ps);

struct CertificationResult {
    double max_violation = 0.0;
    double argmax_p = 0.0;
    double argmax_q = 0.0;

    bool passes(double tol = 1e-12) const { return max_violation <= tol; }
};

// Largest grid value of I_{f_c} - min(c,1-c) * He * sqrt(1 - He^2/4);
// nonpositive (up to 1e-12) certifies the bound on that grid.
CertificationResult certify_primitive_hellinger_bound(double c, int grid);

enum class TvConvention { halved, unhalved };

// Certifies dTV/2 <= He * sqrt(1 - He^2/4) on the grid. The unhalved
// convention is exposed deliberately: with it the inequality fails at
// maximal separation (violation 1 at p=1, q=0), which documents why the
// halved convention is the certifiable one.
CertificationResult certify_tv_hellinger_bound(
    int grid, TvConvention convention = TvConvention::halved);

// The curve {(He2, min(c,1-c) * He * sqrt(1 - He2/4))} sampled uniformly in
// He2 over [0,2]; overlays the hull in external plots.
PlanarPointSet parametric_boundary(double c, int samples);

// CSV emitters; headers are "p,q,x,y" and "x,y".
void write_j2_csv(std::ostream& os, const std::vector<J2Sample>& samples);
void write_xy_csv(std::ostream& os, const PlanarPointSet& ps);

}  // namespace costsense
