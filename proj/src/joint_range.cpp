#include "costsense/joint_range.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace costsense {

namespace {

constexpr double kCollinearTol = 1e-12;

double cross(const PlanarPoint& o, const PlanarPoint& a, const PlanarPoint& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

DiscreteDistribution binary(double p) {
    return DiscreteDistribution({"a0", "a1"}, {p, 1.0 - p});
}

double point_segment_distance(const PlanarPoint& pt, const PlanarPoint& a,
                              const PlanarPoint& b) {
    const double vx = b.x - a.x;
    const double vy = b.y - a.y;
    const double len_sq = vx * vx + vy * vy;
    double t = 0.0;
    if (len_sq > 0.0) {
        t = ((pt.x - a.x) * vx + (pt.y - a.y) * vy) / len_sq;
        t = std::clamp(t, 0.0, 1.0);
    }
    const double dx = pt.x - (a.x + t * vx);
    const double dy = pt.y - (a.y + t * vy);
    return std::hypot(dx, dy);
}

// min(c,1-c) * He * sqrt(1 - He2/4) from the squared Hellinger value.
double boundary_height(double c, double he2) {
    const double cmin = std::min(c, 1.0 - c);
    return cmin * std::sqrt(he2) * std::sqrt(1.0 - he2 / 4.0);
}

}  // namespace

bool Hull2D::contains(const PlanarPoint& pt, double tol) const {
    if (vertices.empty()) return false;
    if (vertices.size() == 1) {
        return std::hypot(pt.x - vertices[0].x, pt.y - vertices[0].y) <= tol;
    }
    if (vertices.size() == 2) {
        return point_segment_distance(pt, vertices[0], vertices[1]) <= tol;
    }
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        const PlanarPoint& a = vertices[i];
        const PlanarPoint& b = vertices[(i + 1) % vertices.size()];
        if (cross(a, b, pt) < -tol) return false;
    }
    return true;
}

std::vector<J2Sample> sample_j2(const DivergenceKind& kind_x,
                                const DivergenceKind& kind_y, int grid) {
    if (grid < 2) {
        throw DomainError("grid must be at least 2");
    }
    std::vector<J2Sample> samples;
    samples.reserve(static_cast<std::size_t>(grid) * grid);
    for (int i = 0; i < grid; ++i) {
        const double p = static_cast<double>(i) / (grid - 1);
        const DiscreteDistribution P = binary(p);
        for (int j = 0; j < grid; ++j) {
            const double q = static_cast<double>(j) / (grid - 1);
            const DiscreteDistribution Q = binary(q);
            const double x = divergence(kind_x, P, Q);
            const double y = divergence(kind_y, P, Q);
            if (!std::isfinite(x) || !std::isfinite(y)) continue;
            samples.push_back({p, q, x, y});
        }
    }
    return samples;
}

PlanarPointSet to_point_set(const std::vector<J2Sample>& samples) {
    PlanarPointSet ps;
    ps.points.reserve(samples.size());
    for (const auto& s : samples) ps.points.push_back({s.x, s.y});
    return ps;
}

Hull2D convex_hull(const PlanarPointSet& ps) {
    if (ps.points.empty()) {
        throw DomainError("convex hull of an empty point set");
    }
    for (const auto& pt : ps.points) {
        if (!std::isfinite(pt.x) || !std::isfinite(pt.y)) {
            throw DomainError("convex hull input must be finite");
        }
    }

    std::vector<PlanarPoint> pts = ps.points;
    std::sort(pts.begin(), pts.end(), [](const PlanarPoint& a, const PlanarPoint& b) {
        if (a.x != b.x) return a.x < b.x;
        return a.y < b.y;
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](const PlanarPoint& a, const PlanarPoint& b) {
                              return a.x == b.x && a.y == b.y;
                          }),
              pts.end());

    Hull2D hull;
    if (pts.size() == 1) {
        hull.vertices = pts;
        return hull;
    }

    std::vector<PlanarPoint> chain(2 * pts.size());
    std::size_t k = 0;
    for (const auto& pt : pts) {  // lower hull
        while (k >= 2 && cross(chain[k - 2], chain[k - 1], pt) <= kCollinearTol) {
            --k;
        }
        chain[k++] = pt;
    }
    const std::size_t lower_end = k + 1;
    for (auto it = pts.rbegin() + 1; it != pts.rend(); ++it) {  // upper hull
        while (k >= lower_end &&
               cross(chain[k - 2], chain[k - 1], *it) <= kCollinearTol) {
            --k;
        }
        chain[k++] = *it;
    }
    chain.resize(k - 1);  // last point repeats the first
    hull.vertices = std::move(chain);
    return hull;
}

CertificationResult certify_primitive_hellinger_bound(double c, int grid) {
    if (!(c > 0.0 && c < 1.0)) {
        throw DomainError("cost parameter c outside (0,1)");
    }
    if (grid < 2) {
        throw DomainError("grid must be at least 2");
    }
    CertificationResult result;
    result.max_violation = -std::numeric_limits<double>::infinity();
    const auto he2_kind = DivergenceKind::hellinger_sq();
    for (int i = 0; i < grid; ++i) {
        const double p = static_cast<double>(i) / (grid - 1);
        const DiscreteDistribution P = binary(p);
        for (int j = 0; j < grid; ++j) {
            const double q = static_cast<double>(j) / (grid - 1);
            const DiscreteDistribution Q = binary(q);
            const double he2 = divergence(he2_kind, P, Q);
            const double violation =
                primitive(c, P, Q, 2) - boundary_height(c, he2);
            if (violation > result.max_violation) {
                result.max_violation = violation;
                result.argmax_p = p;
                result.argmax_q = q;
            }
        }
    }
    return result;
}

CertificationResult certify_tv_hellinger_bound(int grid, TvConvention convention) {
    if (grid < 2) {
        throw DomainError("grid must be at least 2");
    }
    CertificationResult result;
    result.max_violation = -std::numeric_limits<double>::infinity();
    const auto he2_kind = DivergenceKind::hellinger_sq();
    const auto tv_kind = DivergenceKind::tv();
    for (int i = 0; i < grid; ++i) {
        const double p = static_cast<double>(i) / (grid - 1);
        const DiscreteDistribution P = binary(p);
        for (int j = 0; j < grid; ++j) {
            const double q = static_cast<double>(j) / (grid - 1);
            const DiscreteDistribution Q = binary(q);
            const double he2 = divergence(he2_kind, P, Q);
            double tv = divergence(tv_kind, P, Q);
            if (convention == TvConvention::halved) tv *= 0.5;
            const double violation =
                tv - std::sqrt(he2) * std::sqrt(1.0 - he2 / 4.0);
            if (violation > result.max_violation) {
                result.max_violation = violation;
                result.argmax_p = p;
                result.argmax_q = q;
            }
        }
    }
    return result;
}

PlanarPointSet parametric_boundary(double c, int samples) {
    if (!(c > 0.0 && c < 1.0)) {
        throw DomainError("cost parameter c outside (0,1)");
    }
    if (samples < 2) {
        throw DomainError("samples must be at least 2");
    }
    PlanarPointSet ps;
    ps.points.reserve(samples);
    for (int k = 0; k < samples; ++k) {
        const double he2 = 2.0 * static_cast<double>(k) / (samples - 1);
        ps.points.push_back({he2, boundary_height(c, he2)});
    }
    return ps;
}

void write_j2_csv(std::ostream& os, const std::vector<J2Sample>& samples) {
    os << "p,q,x,y\n";
    for (const auto& s : samples) {
        os << fmt_sig(s.p, 9) << ',' << fmt_sig(s.q, 9) << ','
           << fmt_sig(s.x, 9) << ',' << fmt_sig(s.y, 9) << '\n';
    }
}

void write_xy_csv(std::ostream& os, const PlanarPointSet& ps) {
    os << "x,y\n";
    for (const auto& pt : ps.points) {
        os << fmt_sig(pt.x, 9) << ',' << fmt_sig(pt.y, 9) << '\n';
    }
}

}  // namespace costsense
