#include "ratvol/verify.hpp"

#include "ratvol/fan.hpp"
#include "ratvol/measure.hpp"
#include "ratvol/sampling.hpp"
#include "ratvol/transforms.hpp"

#include <algorithm>
#include <chrono>
#include <exception>
#include <optional>

namespace ratvol::verify {

namespace {

using sample::Rng;
using io::Json;

Json rat_vector(const std::vector<Rat>& v) {
    Json out = Json::array();
    for (const auto& r : v) out.push_back(to_string(r));
    return out;
}

Json map_to_json(const GnMap& g) {
    Json m = Json::array();
    for (std::size_t r = 0; r < g.dim(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < g.dim(); ++c) row.push_back(to_string(g.matrix()(r, c)));
        m.push_back(row);
    }
    Json t = Json::array();
    for (std::size_t i = 0; i < g.dim(); ++i) t.push_back(to_string(g.shift()[i]));
    return Json{{"matrix", m}, {"shift", t}};
}

/// One property instance. Returns an empty Json on success, a counterexample otherwise.
using Instance = std::function<Json(Rng&)>;
using CorpusInstance = std::function<Json(Rng&, const Polyhedron&)>;

using CorpusPair = std::function<Json(const Polyhedron&, const Polyhedron&)>;

struct Property {
    std::string name;
    Instance random;
    CorpusInstance corpus = {};  ///< may be empty
    CorpusPair pair = {};        ///< may be empty
};

std::optional<Simplex> try_simplex(std::vector<RatPoint> vs) {
    try {
        return Simplex(std::move(vs));
    } catch (const GeometryError&) {
        return std::nullopt;
    }
}

class Suite {
public:
    explicit Suite(const Options& o) : options_(o) {
        lambda_ = o.lambda ? o.lambda : LambdaVector([](const Polyhedron& p) { return lambda_vector(p); });
    }

    std::vector<Property> properties() const;

private:
    std::vector<Rat> lam(const Polyhedron& p) const {
        std::vector<Rat> v = lambda_(p);
        v.resize(p.ambient_dim() + 1);
        return v;
    }

    Json invariance(Rng& rng, const Polyhedron& p) const {
        const GnMap g = sample::random_desk_map(rng, p);
        const Polyhedron image = apply_polyhedron(g, p);
        const auto before = lam(p), after = lam(image);
        if (before == after) return {};
        return Json{{"polyhedron", io::polyhedron_to_json(p)},
                    {"map", map_to_json(g)},
                    {"image", io::polyhedron_to_json(image)},
                    {"lambda", rat_vector(before)},
                    {"lambda_image", rat_vector(after)}};
    }

    Json valuation(const Polyhedron& p, const Polyhedron& q) const {
        const Polyhedron join = union_of(p, q), meet = intersection(p, q);
        const auto lp = lam(p), lq = lam(q), lu = lam(join), li = lam(meet);
        // The identity needs d >= dim P, dim Q: a lower-dimensional part of P ∩ Q
        // is invisible in P and Q themselves.
        const int top = std::max({p.dimension(), q.dimension(), 0});
        for (auto d = static_cast<std::size_t>(top); d < lp.size(); ++d) {
            if (lp[d] + lq[d] == lu[d] + li[d]) continue;
            return Json{{"p", io::polyhedron_to_json(p)},  {"q", io::polyhedron_to_json(q)},
                        {"d", d},                          {"lambda_p", rat_vector(lp)},
                        {"lambda_q", rat_vector(lq)},      {"lambda_union", rat_vector(lu)},
                        {"lambda_intersection", rat_vector(li)}};
        }
        return {};
    }

    Json conservativity(const Polyhedron& p) const {
        const auto low = lam(p), high = lam(embed(p));
        bool ok = high.back() == 0;
        for (std::size_t d = 0; d < low.size() && ok; ++d) ok = low[d] == high[d];
        if (ok) return {};
        return Json{{"polyhedron", io::polyhedron_to_json(p)}, {"lambda", rat_vector(low)},
                    {"lambda_embedded", rat_vector(high)}};
    }

    Json lebesgue(const Polyhedron& p) const {
        const std::size_t n = p.ambient_dim();
        Rat volume = 0;
        for (const auto& s : p.canonical().maximal())
            if (s.dim() == n) volume += lebesgue_volume(s).value;
        const Rat l = lam(p)[n];
        if (l == volume) return {};
        return Json{{"polyhedron", io::polyhedron_to_json(p)},
                    {"lambda_n", to_string(l)},
                    {"lebesgue", to_string(volume)}};
    }

    Json triangulation_independence(Rng& rng, const Polyhedron& p) const {
        const Complex base = regular_triangulation(p);
        std::vector<Rat> expected;
        for (std::size_t d = 0; d <= p.ambient_dim(); ++d) expected.push_back(lambda_of_complex(base, d).value);
        std::uniform_int_distribution<int> length(1, 3);
        for (std::size_t chain = 0; chain < options_.chains; ++chain) {
            Complex c = base;
            const int steps = base.empty() ? 0 : length(rng);
            for (int k = 0; k < steps; ++k) c = sample::random_farey_step(rng, c);
            std::vector<Rat> got;
            for (std::size_t d = 0; d <= p.ambient_dim(); ++d) got.push_back(lambda_of_complex(c, d).value);
            if (got != expected)
                return Json{{"polyhedron", io::polyhedron_to_json(p)}, {"refinement", io::complex_to_json(c)},
                            {"lambda", rat_vector(expected)}, {"lambda_refined", rat_vector(got)}};
        }
        return {};
    }

    Json dimensional_part(const Polyhedron& p) const {
        const auto full = lam(p);
        const std::size_t n = p.ambient_dim();
        for (std::size_t d = 0; d <= n; ++d) {
            const Polyhedron part = support_of(ratvol::dimensional_part(p.canonical(), d));
            const Rat l = part.empty() ? Rat(0) : lam(part)[d];
            if (l != full[d] || (static_cast<int>(d) > p.dimension() && full[d] != 0))
                return Json{{"polyhedron", io::polyhedron_to_json(p)}, {"d", d}, {"lambda", rat_vector(full)},
                            {"lambda_part", to_string(l)}};
        }
        const auto empty = lam(Polyhedron(n));
        for (const auto& v : empty)
            if (v != 0) return Json{{"empty_in_dimension", n}, {"lambda", rat_vector(empty)}};
        return {};
    }

    Json pyramid(Rng& rng) const {
        std::uniform_int_distribution<std::size_t> dim(1, 4);
        const std::size_t n = dim(rng);
        std::uniform_int_distribution<std::size_t> kd(1, n);
        const std::size_t k = kd(rng);
        std::uniform_int_distribution<long> coord(-2, 2);
        while (true) {
            const Simplex base = sample::random_regular_simplex(rng, n, k - 1, 2);
            for (int attempt = 0; attempt < 40; ++attempt) {
                RatPoint apex(n);
                for (std::size_t i = 0; i < n; ++i) apex[i] = coord(rng);
                std::vector<RatPoint> vs = base.vertices();
                vs.push_back(apex);
                const auto candidate = try_simplex(std::move(vs));
                if (!candidate || !is_regular(*candidate)) continue;
                const Simplex& t = *candidate;
                const Rat whole = lam(Polyhedron(n, {t}))[k];
                const Rat face = lam(Polyhedron(n, {base}))[k - 1];
                if (whole == face / Rat(static_cast<long>(k))) return {};
                return Json{{"simplex", io::simplex_to_json(t)},
                            {"apex", io::point_to_json(apex)},
                            {"lambda_k", to_string(whole)},
                            {"lambda_base", to_string(face)}};
            }
        }
    }

    Json normalization(Rng& rng) const {
        std::uniform_int_distribution<std::size_t> dim(1, 4);
        const std::size_t n = dim(rng);
        std::uniform_int_distribution<std::size_t> jd(1, n);
        const std::size_t j = jd(rng);
        const GnMap g = random_unimodular(n, rng(), 6, 3);
        std::vector<IntVec> basis;
        for (std::size_t r = 0; r < j; ++r) basis.push_back(g.matrix().row(r));
        const Complex box = apply(GnMap(IntMat::identity(n), g.shift()), standard_triangulation(basis));
        const Polyhedron p = support_of(box);
        const Rat l = lam(p)[j];
        if (l == 1) return {};
        Json b = Json::array();
        for (const auto& v : basis) {
            Json row = Json::array();
            for (const auto& x : v.entries()) row.push_back(to_string(x));
            b.push_back(row);
        }
        return Json{{"basis", b}, {"polyhedron", io::polyhedron_to_json(p)}, {"lambda_j", to_string(l)}};
    }

    Json proportionality(Rng& rng) const {
        std::uniform_int_distribution<std::size_t> dim(1, 4);
        const std::size_t n = dim(rng);
        std::uniform_int_distribution<std::size_t> md(0, n);
        const std::size_t m = md(rng);
        const Simplex t = sample::random_regular_simplex(rng, n, m, 2);
        Simplex other = t;
        if (rng() % 2) {
            other = equal_denominator_simplex(affine_hull(t));
        } else {
            Complex c = Complex::from_simplexes(n, {t});
            for (int k = 0; k < 2; ++k) c = sample::random_farey_step(rng, c);
            other = sample::pick(rng, maximal_simplexes(c, m).members);
        }
        const Rat lt = lam(Polyhedron(n, {t}))[m], lo = lam(Polyhedron(n, {other}))[m];
        const Rat ht = hausdorff_sq(t).value, ho = hausdorff_sq(other).value;
        const bool squared_ratio = lt * lt * ho == lo * lo * ht;
        const bool kappa = kappa_sq(affine_hull(t)) == lt * lt / ht;
        if (squared_ratio && kappa) return {};
        return Json{{"t", io::simplex_to_json(t)},
                    {"t_prime", io::simplex_to_json(other)},
                    {"lambda_t", to_string(lt)},
                    {"lambda_t_prime", to_string(lo)},
                    {"hausdorff_sq_t", to_string(ht)},
                    {"hausdorff_sq_t_prime", to_string(ho)},
                    {"kappa_sq", to_string(kappa_sq(affine_hull(t)))}};
    }

    const Options& options_;
    LambdaVector lambda_;
};

std::vector<Property> Suite::properties() const {
    auto self = this;
    return {
        {"invariance", [self](Rng& rng) { return self->invariance(rng, sample::random_desk_polyhedron(rng)); },
         [self](Rng& rng, const Polyhedron& p) { return self->invariance(rng, p); }},
        {"valuation",
         [self](Rng& rng) {
             const auto [p, q] = sample::random_desk_pair(rng);
             return self->valuation(p, q);
         },
         {},
         [self](const Polyhedron& p, const Polyhedron& q) { return self->valuation(p, q); }},
        {"conservativity",
         [self](Rng& rng) {
             std::uniform_int_distribution<std::size_t> dim(1, 3);
             return self->conservativity(sample::random_desk_polyhedron(rng, dim(rng)));
         },
         [self](Rng&, const Polyhedron& p) { return self->conservativity(p); }},
        {"pyramid", [self](Rng& rng) { return self->pyramid(rng); }, {}},
        {"normalization", [self](Rng& rng) { return self->normalization(rng); }, {}},
        {"lebesgue",
         [self](Rng& rng) { return self->lebesgue(sample::random_desk_polyhedron(rng, 0, true)); },
         [self](Rng&, const Polyhedron& p) {
             return p.dimension() == static_cast<int>(p.ambient_dim()) ? self->lebesgue(p) : Json{};
         }},
        {"proportionality", [self](Rng& rng) { return self->proportionality(rng); }, {}},
        {"triangulation_independence",
         [self](Rng& rng) { return self->triangulation_independence(rng, sample::random_desk_polyhedron(rng)); },
         [self](Rng& rng, const Polyhedron& p) { return self->triangulation_independence(rng, p); }},
        {"dimensional_part", [self](Rng& rng) { return self->dimensional_part(sample::random_desk_polyhedron(rng)); },
         [self](Rng&, const Polyhedron& p) { return self->dimensional_part(p); }},
    };
}

void record(PropertyReport& r, const std::function<Json()>& instance, std::size_t index, bool from_corpus) {
    ++r.executed;
    Json failure;
    try {
        failure = instance();
    } catch (const std::exception& e) {
        failure = Json{{"exception", e.what()}};
    }
    if (failure.is_null()) return;
    ++r.failed;
    if (r.counterexample.is_null()) {
        failure[from_corpus ? "corpus_index" : "trial"] = index;
        r.counterexample = std::move(failure);
    }
}

}  // namespace

const std::vector<std::string>& property_names() {
    static const std::vector<std::string> names = [] {
        Options o;
        std::vector<std::string> out;
        for (const auto& p : Suite(o).properties()) out.push_back(p.name);
        return out;
    }();
    return names;
}

Report run(const Options& options) {
    Report report;
    report.seed = options.seed;
    report.trials = options.trials;
    const Suite suite(options);
    const auto props = suite.properties();
    for (const auto& name : options.only)
        if (std::find(property_names().begin(), property_names().end(), name) == property_names().end())
            throw std::invalid_argument("unknown property \"" + name + "\"");
    for (std::size_t k = 0; k < props.size(); ++k) {
        const Property& prop = props[k];
        if (!options.only.empty() && std::find(options.only.begin(), options.only.end(), prop.name) == options.only.end())
            continue;
        PropertyReport r;
        r.name = prop.name;
        const auto start = std::chrono::steady_clock::now();
        if (options.trials > 0) {
            for (std::size_t t = 0; t < options.trials; ++t) {
                Rng rng(sample::derive_seed(options.seed, k, t));
                record(r, [&] { return prop.random(rng); }, t, false);
            }
            const auto& corpus = options.corpus;
            for (std::size_t i = 0; i < corpus.size(); ++i) {
                Rng rng(sample::derive_seed(options.seed, k + props.size(), i));
                if (prop.corpus) {
                    record(r, [&] { return prop.corpus(rng, corpus[i]); }, i, true);
                } else if (prop.pair && i + 1 < corpus.size() &&
                           corpus[i].ambient_dim() == corpus[i + 1].ambient_dim()) {
                    record(r, [&] { return prop.pair(corpus[i], corpus[i + 1]); }, i, true);
                }
            }
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        report.properties.push_back(std::move(r));
    }
    return report;
}

bool Report::vacuous() const {
    for (const auto& p : properties)
        if (p.executed > 0) return false;
    return true;
}

bool Report::passed() const {
    for (const auto& p : properties)
        if (p.failed > 0) return false;
    return true;
}

Json Report::to_json() const {
    std::size_t executed = 0;
    Json props = Json::array();
    for (const auto& p : properties) {
        if (p.executed > 0) ++executed;
        Json entry{{"name", p.name},
                   {"status", p.executed == 0 ? "vacuous" : p.failed == 0 ? "pass" : "fail"},
                   {"instances", p.executed},
                   {"failures", p.failed}};
        if (!p.counterexample.is_null()) entry["counterexample"] = p.counterexample;
        props.push_back(std::move(entry));
    }
    return Json{{"seed", std::to_string(seed)},
                {"trials", trials},
                {"status", vacuous() ? "vacuous" : passed() ? "pass" : "fail"},
                {"properties_executed", executed},
                {"properties", props}};
}

LambdaVector corrupted_lambda() {
    return [](const Polyhedron& p) {
        std::vector<Rat> v = lambda_vector(p);
        if (!p.empty()) {
            const auto vs = p.canonical().vertices();
            v[0] += (*std::min_element(vs.begin(), vs.end()))[0];
        }
        return v;
    };
}

}  // namespace ratvol::verify
