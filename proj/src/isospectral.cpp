#include "hear/isospectral.hpp"

#include "hear/errors.hpp"
#include "hear/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hear {

std::pair<GridPolygon, GridPolygon> gww_pair() {
    return {GridPolygon::from_vertices({{2, 0}, {3, 1}, {3, 2}, {1, 2}, {1, 3}, {0, 2}, {1, 1}, {2, 1}}),
            GridPolygon::from_vertices({{2, 0}, {2, 1}, {3, 1}, {2, 2}, {1, 2}, {1, 3}, {0, 3}, {0, 2}})};
}

Rational corner_sum_exact(const GridPolygon& p) {
    Rational s{0, 1};
    for (int k : p.interior_angles_eighths()) {
        // pi/alpha - alpha/pi with alpha = k pi/4 is (16 - k^2) / (4k).
        const std::int64_t num = 16 - static_cast<std::int64_t>(k) * k, den = 4 * static_cast<std::int64_t>(k);
        s = {s.num * den + num * s.den, s.den * den};
        const std::int64_t g = std::gcd(s.num, s.den);
        s.num /= g;
        s.den /= g;
    }
    if (s.den < 0)
        s = {-s.num, -s.den};
    return s;
}

namespace {

// Counter-clockwise cycle translated so its lexicographically smallest vertex
// is the origin and listed first.
std::vector<LatticePoint> normal_form(std::vector<LatticePoint> v) {
    std::int64_t twice = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const auto& p = v[i];
        const auto& q = v[(i + 1) % v.size()];
        twice += static_cast<std::int64_t>(p.x) * q.y - static_cast<std::int64_t>(q.x) * p.y;
    }
    if (twice < 0)
        std::reverse(v.begin(), v.end());
    const auto first = std::min_element(v.begin(), v.end());
    std::rotate(v.begin(), first, v.end());
    const LatticePoint o = v.front();
    for (auto& p : v)
        p = {p.x - o.x, p.y - o.y};
    return v;
}

} // namespace

bool lattice_congruent(const GridPolygon& p, const GridPolygon& q) {
    if (p.size() != q.size())
        return false;
    const auto target = normal_form(q.vertices());
    for (int m = 0; m < 8; ++m) {
        std::vector<LatticePoint> img;
        for (auto v : p.vertices()) {
            for (int r = 0; r < m % 4; ++r)
                v = {-v.y, v.x};
            if (m >= 4)
                v = {v.x, -v.y};
            img.push_back(v);
        }
        if (normal_form(img) == target)
            return true;
    }
    return false;
}

bool IsospectralReport::shrinking() const {
    for (std::size_t i = 1; i < levels.size(); ++i)
        if (!(levels[i].max_gap < levels[i - 1].max_gap))
            return false;
    return true;
}

IsospectralReport compare_spectra(int k, const std::vector<int>& levels) {
    if (k < 1)
        throw DomainError("compare_spectra needs k >= 1");
    if (levels.empty() || !std::is_sorted(levels.begin(), levels.end()) ||
        std::adjacent_find(levels.begin(), levels.end()) != levels.end())
        throw DomainError("mesh levels must be nonempty and strictly ascending");
    const auto [d1, d2] = gww_pair();
    IsospectralReport rep;
    rep.k = k;
    for (int n : levels) {
        LevelGaps g;
        g.n = n;
        g.first = solve_lowest(build_mesh(d1, n), k).values;
        g.second = solve_lowest(build_mesh(d2, n), k).values;
        for (int i = 0; i < k; ++i) {
            g.gaps.push_back(std::abs(g.first[i] - g.second[i]) / g.first[i]);
            g.max_gap = std::max(g.max_gap, g.gaps.back());
        }
        rep.levels.push_back(std::move(g));
    }
    return rep;
}

} // namespace hear
