#include "ratvol/cell.hpp"

#include <algorithm>

namespace ratvol::cell {

Rat Constraint::eval(const RatPoint& x) const {
    Rat v = offset;
    for (std::size_t i = 0; i < normal.size(); ++i) v += normal[i] * x[i];
    return v;
}

Constraint Constraint::negated() const {
    Constraint c = *this;
    for (auto& a : c.normal) a = -a;
    c.offset = -c.offset;
    return c;
}

Constraint Constraint::normalized() const {
    std::vector<Rat> all = normal;
    all.push_back(offset);
    const IntVec p = primitive_integer(all);
    Constraint c{std::vector<Rat>(normal.size()), Rat(p[normal.size()]), equality};
    for (std::size_t i = 0; i < normal.size(); ++i) c.normal[i] = p[i];
    if (equality) {
        auto nz = std::find_if(c.normal.begin(), c.normal.end(), [](const Rat& r) { return r != 0; });
        if (nz != c.normal.end() && *nz < 0) c = c.negated();
    }
    return c;
}

bool operator<(const Constraint& a, const Constraint& b) {
    if (a.equality != b.equality) return a.equality < b.equality;
    for (std::size_t i = 0; i < a.normal.size(); ++i) {
        if (auto c = compare(a.normal[i], b.normal[i]); c != 0) return c < 0;
    }
    return a.offset < b.offset;
}

std::size_t affine_rank(const std::vector<RatPoint>& points) {
    if (points.empty()) return 0;
    const std::size_t n = points.front().dim();
    RatMat m(points.size(), n + 1);
    for (std::size_t r = 0; r < points.size(); ++r) {
        for (std::size_t c = 0; c < n; ++c) m(r, c) = points[r][c];
        m(r, n) = 1;
    }
    return rank(m);
}

SimplexConstraints simplex_constraints(const Simplex& s) {
    const std::size_t n = s.ambient_dim();
    const std::size_t k = s.vertices().size();
    RatMat h(k, n + 1);
    for (std::size_t r = 0; r < k; ++r) {
        for (std::size_t c = 0; c < n; ++c) h(r, c) = s.vertex(r)[c];
        h(r, n) = 1;
    }
    SimplexConstraints out;
    for (auto& v : nullspace(h)) {
        Constraint c{std::vector<Rat>(v.begin(), v.begin() + static_cast<long>(n)), v[n], true};
        out.equations.push_back(c.normalized());
    }
    if (k == 1) return out;
    for (std::size_t i = 0; i < k; ++i) {
        std::vector<Rat> e(k), x;
        e[i] = 1;
        solve(h, e, x);
        Constraint c{std::vector<Rat>(x.begin(), x.begin() + static_cast<long>(n)), x[n], false};
        out.facets.push_back(c.normalized());
    }
    return out;
}

ConvexCell::ConvexCell(std::size_t ambient_dim, std::vector<RatPoint> vertices, std::vector<Constraint> constraints)
    : ambient_dim_(ambient_dim), vertices_(std::move(vertices)), constraints_(std::move(constraints)) {
    std::sort(vertices_.begin(), vertices_.end());
    vertices_.erase(std::unique(vertices_.begin(), vertices_.end()), vertices_.end());
}

ConvexCell ConvexCell::of_simplex(const Simplex& s) {
    SimplexConstraints sc = simplex_constraints(s);
    std::vector<Constraint> all = std::move(sc.equations);
    all.insert(all.end(), sc.facets.begin(), sc.facets.end());
    return ConvexCell(s.ambient_dim(), s.vertices(), std::move(all));
}

int ConvexCell::dim() const { return static_cast<int>(affine_rank(vertices_)) - 1; }

bool ConvexCell::adjacent(std::size_t i, std::size_t j, const std::vector<std::vector<Rat>>& values) const {
    std::vector<const Constraint*> tight;
    for (std::size_t c = 0; c < constraints_.size(); ++c) {
        if (constraints_[c].equality || (values[c][i] == 0 && values[c][j] == 0)) tight.push_back(&constraints_[c]);
    }
    if (tight.size() + 1 < ambient_dim_) return false;
    RatMat m(tight.size(), ambient_dim_);
    for (std::size_t r = 0; r < tight.size(); ++r)
        for (std::size_t c = 0; c < ambient_dim_; ++c) m(r, c) = tight[r]->normal[c];
    return rank(m) + 1 == ambient_dim_;
}

bool ConvexCell::strictly_split_by(const Constraint& h) const {
    bool pos = false, neg = false;
    for (const auto& v : vertices_) {
        const int s = sgn(h.eval(v));
        pos |= s > 0;
        neg |= s < 0;
        if (pos && neg) return true;
    }
    return false;
}

ConvexCell ConvexCell::cut(const Constraint& h) const {
    if (empty()) return *this;
    std::vector<Rat> vals(vertices_.size());
    bool pos = false, neg = false;
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        vals[i] = h.eval(vertices_[i]);
        pos |= sgn(vals[i]) > 0;
        neg |= sgn(vals[i]) < 0;
    }
    if (!neg && (!pos || !h.equality)) return *this;

    std::vector<RatPoint> kept;
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        if (vals[i] == 0 || (!h.equality && vals[i] > 0)) kept.push_back(vertices_[i]);
    }
    if (pos && neg) {
        std::vector<std::vector<Rat>> values(constraints_.size(), std::vector<Rat>(vertices_.size()));
        for (std::size_t c = 0; c < constraints_.size(); ++c)
            for (std::size_t i = 0; i < vertices_.size(); ++i) values[c][i] = constraints_[c].eval(vertices_[i]);
        for (std::size_t i = 0; i < vertices_.size(); ++i) {
            if (vals[i] <= 0) continue;
            for (std::size_t j = 0; j < vertices_.size(); ++j) {
                if (vals[j] >= 0 || !adjacent(i, j, values)) continue;
                const Rat t = vals[i] / (vals[i] - vals[j]);
                RatPoint x(ambient_dim_);
                for (std::size_t c = 0; c < ambient_dim_; ++c)
                    x[c] = vertices_[i][c] + t * (vertices_[j][c] - vertices_[i][c]);
                kept.push_back(std::move(x));
            }
        }
    }
    std::vector<Constraint> cons = constraints_;
    cons.push_back(h);
    return ConvexCell(ambient_dim_, std::move(kept), std::move(cons));
}

ConvexCell ConvexCell::cut_all(const std::vector<Constraint>& hs) const {
    ConvexCell c = *this;
    for (const auto& h : hs) {
        if (c.empty()) break;
        c = c.cut(h);
    }
    return c;
}

std::vector<std::vector<RatPoint>> ConvexCell::facets_of(const std::vector<RatPoint>& face) const {
    const std::size_t rank = affine_rank(face);
    std::vector<std::vector<RatPoint>> out;
    if (rank <= 1) return out;
    for (const auto& c : constraints_) {
        if (c.equality) continue;
        std::vector<RatPoint> sub;
        for (const auto& v : face)
            if (c.eval(v) == 0) sub.push_back(v);
        if (sub.size() == face.size() || sub.empty()) continue;
        if (affine_rank(sub) + 1 != rank) continue;
        if (std::find(out.begin(), out.end(), sub) == out.end()) out.push_back(std::move(sub));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::vector<RatPoint>> ConvexCell::pull(const std::vector<RatPoint>& face, PullingMemo& memo) const {
    if (auto it = memo.find(face); it != memo.end()) return it->second;
    std::vector<std::vector<RatPoint>> result;
    if (affine_rank(face) == face.size()) {
        result.push_back(face);
    } else {
        const RatPoint& apex = face.front();
        for (const auto& f : facets_of(face)) {
            if (std::find(f.begin(), f.end(), apex) != f.end()) continue;
            for (auto s : pull(f, memo)) {
                s.push_back(apex);
                std::sort(s.begin(), s.end());
                result.push_back(std::move(s));
            }
        }
    }
    memo.emplace(face, result);
    return result;
}

std::vector<Simplex> ConvexCell::pulling_triangulation(PullingMemo* memo) const {
    if (empty()) return {};
    PullingMemo local;
    PullingMemo& m = memo ? *memo : local;
    std::vector<Simplex> out;
    for (auto& vs : pull(vertices_, m)) out.emplace_back(std::move(vs));
    return out;
}

ConvexCell intersect(const Simplex& s, const Simplex& t) {
    SimplexConstraints tc = simplex_constraints(t);
    std::vector<Constraint> hs = std::move(tc.equations);
    hs.insert(hs.end(), tc.facets.begin(), tc.facets.end());
    return ConvexCell::of_simplex(s).cut_all(hs);
}

SupportIndex::SupportIndex(const std::vector<Simplex>& simplexes) {
    for (const auto& s : simplexes) {
        SimplexConstraints sc = simplex_constraints(s);
        std::vector<Constraint> hs;
        for (const auto& h : sc.equations) hs.push_back(h.normalized());
        for (const auto& h : sc.facets) hs.push_back(h.normalized());
        pieces_.push_back(std::move(hs));
    }
}

bool SupportIndex::contains(const RatPoint& p) const {
    return std::any_of(pieces_.begin(), pieces_.end(), [&](const std::vector<Constraint>& hs) {
        return std::all_of(hs.begin(), hs.end(), [&](const Constraint& h) {
            const int sign = sgn(h.eval(p));
            return h.equality ? sign == 0 : sign >= 0;
        });
    });
}

}  // namespace ratvol::cell
