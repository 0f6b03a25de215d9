#pragma once

#include <algorithm>
#include <numeric>
#include <span>
#include <vector>

#include "core.hpp"

namespace mcalc {

struct Cluster {
    cplx center;       ///< centroid of the members
    int multiplicity;  ///< number of members
};

namespace detail {

template <class Near>
std::vector<Cluster> cluster_by(std::span<const cplx> pts, Near near) {
    const std::size_t n = pts.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (near(pts[i], pts[j])) parent[find(j)] = find(i);

    std::vector<Cluster> out;
    std::vector<std::ptrdiff_t> slot(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t r = find(i);
        if (slot[r] < 0) {
            slot[r] = static_cast<std::ptrdiff_t>(out.size());
            out.push_back({cplx{0.0}, 0});
        }
        Cluster& c = out[static_cast<std::size_t>(slot[r])];
        c.center += pts[i];
        ++c.multiplicity;
    }
    for (auto& c : out) c.center /= static_cast<double>(c.multiplicity);
    return out;
}

}  // namespace detail

/// Single-linkage clustering: points closer than `radius` (transitively)
/// end up in the same cluster. Clusters come back in order of first member.
inline std::vector<Cluster> cluster_points(std::span<const cplx> pts, double radius) {
    return detail::cluster_by(pts, [radius](cplx a, cplx b) { return std::abs(a - b) <= radius; });
}

/// Same, with the radius measured relative to max(1, |a|, |b|) per pair.
inline std::vector<Cluster> cluster_points_relative(std::span<const cplx> pts, double rel) {
    return detail::cluster_by(pts, [rel](cplx a, cplx b) {
        return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)});
    });
}

inline std::vector<cplx> cluster_centers(std::span<const cplx> pts, double radius) {
    std::vector<cplx> out;
    for (const auto& c : cluster_points(pts, radius)) out.push_back(c.center);
    return out;
}

/// Bottleneck distance between two equal-size multisets: the smallest, over
/// all pairings, of the largest pairwise distance. Exact search for n <= 9,
/// greedy nearest pairing above that. Returns +inf on a size mismatch.
inline double multiset_distance(std::span<const cplx> a, std::span<const cplx> b) {
    if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
    const std::size_t n = a.size();
    if (n == 0) return 0.0;
    if (n <= 9) {
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        double best = std::numeric_limits<double>::infinity();
        do {
            double worst = 0.0;
            for (std::size_t i = 0; i < n && worst < best; ++i)
                worst = std::max(worst, std::abs(a[i] - b[perm[i]]));
            best = std::min(best, worst);
        } while (std::next_permutation(perm.begin(), perm.end()));
        return best;
    }
    std::vector<bool> used(n, false);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t arg = 0;
        double d = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < n; ++j)
            if (!used[j] && std::abs(a[i] - b[j]) < d) d = std::abs(a[i] - b[j]), arg = j;
        used[arg] = true;
        worst = std::max(worst, d);
    }
    return worst;
}

/// Hausdorff distance between two finite point sets.
inline double hausdorff_distance(std::span<const cplx> a, std::span<const cplx> b) {
    if (a.empty() && b.empty()) return 0.0;
    if (a.empty() || b.empty()) return std::numeric_limits<double>::infinity();
    auto directed = [](std::span<const cplx> x, std::span<const cplx> y) {
        double h = 0.0;
        for (const cplx& p : x) {
            double d = std::numeric_limits<double>::infinity();
            for (const cplx& q : y) d = std::min(d, std::abs(p - q));
            h = std::max(h, d);
        }
        return h;
    };
    return std::max(directed(a, b), directed(b, a));
}

/// Distance from z to the convex hull of pts (0 when inside).
inline double distance_to_convex_hull(std::span<const cplx> pts, cplx z) {
    std::vector<cplx> p(pts.begin(), pts.end());
    if (p.empty()) return std::numeric_limits<double>::infinity();
    if (p.size() == 1) return std::abs(z - p[0]);
    std::sort(p.begin(), p.end(), [](cplx a, cplx b) {
        return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
    });
    auto cross = [](cplx o, cplx a, cplx b) {
        return (a.real() - o.real()) * (b.imag() - o.imag()) - (a.imag() - o.imag()) * (b.real() - o.real());
    };
    // Andrew's monotone chain, counter-clockwise.
    std::vector<cplx> hull;
    for (int pass = 0; pass < 2; ++pass) {
        const std::size_t base = hull.size();
        for (const cplx& q : p) {
            while (hull.size() >= base + 2 && cross(hull[hull.size() - 2], hull.back(), q) <= 0) hull.pop_back();
            hull.push_back(q);
        }
        hull.pop_back();
        std::reverse(p.begin(), p.end());
    }
    auto seg_dist = [](cplx a, cplx b, cplx q) {
        const cplx ab = b - a;
        const double len2 = std::norm(ab);
        if (len2 == 0.0) return std::abs(q - a);
        const double t = std::clamp(((q - a) * std::conj(ab)).real() / len2, 0.0, 1.0);
        return std::abs(q - (a + t * ab));
    };
    if (hull.size() <= 2) {
        return hull.size() == 1 ? std::abs(z - hull[0]) : seg_dist(hull[0], hull[1], z);
    }
    bool inside = true;
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const cplx a = hull[i], b = hull[(i + 1) % hull.size()];
        if (cross(a, b, z) < 0) inside = false;
        d = std::min(d, seg_dist(a, b, z));
    }
    return inside ? 0.0 : d;
}

}  // namespace mcalc
