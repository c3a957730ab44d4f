#include "definetti/distribution.hpp"

#include <algorithm>
#include <array>
#include <random>

namespace definetti {

namespace {

constexpr std::array<const char*, 9> kFreeNames = {
    "SYMMETRIC", "ORTHOGONAL", "SEMICIRCULAR", "SHIFTED_ORTHOGONAL", "M_UNITARY",
    "FREE_UNITARY", "R_DIAGONAL", "CIRCULAR", "SHIFTED_CIRCULAR",
};

constexpr std::array<const char*, 8> kClassicalNames = {
    "SYMMETRIC", "ORTHOGONAL", "GAUSSIAN", "SHIFTED_ORTHOGONAL", "M_UNITARY",
    "UNITARY", "COMPLEX_GAUSSIAN", "SHIFTED_COMPLEX_GAUSSIAN",
};

template <class K, std::size_t N>
std::string tag_name(ClassTag<K> t, const std::array<const char*, N>& names) {
    std::string s = names[static_cast<std::size_t>(t.kind)];
    if (s == "M_UNITARY") s += "(" + std::to_string(t.m) + ")";
    return s;
}

template <class K, std::size_t N>
ClassTag<K> parse_tag(const std::string& s, const std::array<const char*, N>& names) {
    std::string head = s;
    int m = 0;
    auto open = s.find('(');
    if (open != std::string::npos) {
        if (s.back() != ')') throw InputError("bad class tag: " + s);
        head = s.substr(0, open);
        try {
            m = std::stoi(s.substr(open + 1, s.size() - open - 2));
        } catch (const std::exception&) {
            throw InputError("bad class tag: " + s);
        }
    }
    for (std::size_t i = 0; i < N; ++i)
        if (head == names[i]) {
            ClassTag<K> t{static_cast<K>(i), 0};
            if (head == "M_UNITARY") {
                if (m < 3) throw InputError("M_UNITARY needs m >= 3: " + s);
                t.m = m;
            } else if (open != std::string::npos) {
                throw InputError("only M_UNITARY takes a parameter: " + s);
            }
            return t;
        }
    throw InputError("unknown class tag: " + s);
}

// vanishing conditions shared by the free and classical classifications
struct PatternFacts {
    bool even = true;
    bool pairs = true;       // only length 2
    bool balanced = true;    // #1 == #*
    bool alternating = true; // alternating and balanced
    bool mixed_pairs = true; // only 1* and *1
    std::vector<int> imbalances;

    explicit PatternFacts(const std::vector<StarPattern>& ps) {
        for (const auto& d : ps) {
            even = even && d.size() % 2 == 0;
            pairs = pairs && d.size() == 2;
            balanced = balanced && d.imbalance() == 0;
            alternating = alternating && d.imbalance() == 0 && d.alternating();
            mixed_pairs = mixed_pairs && d.size() == 2 && d[0] != d[1];
            imbalances.push_back(d.imbalance());
        }
    }

    bool divisible(int m) const {
        return std::all_of(imbalances.begin(), imbalances.end(), [m](int x) { return x % m == 0; });
    }
};

std::vector<StarPattern> without_order_one(const std::vector<StarPattern>& ps) {
    std::vector<StarPattern> r;
    for (const auto& d : ps)
        if (d.size() != 1) r.push_back(d);
    return r;
}

std::vector<FreeClassTag> free_base(const PatternFacts& f, bool selfadjoint, int m_max) {
    std::vector<FreeClassTag> t;
    if (f.even) t.push_back({FreeClass::symmetric});
    if (f.pairs) t.push_back({FreeClass::orthogonal});
    if (f.pairs && selfadjoint) t.push_back({FreeClass::semicircular});
    for (int m = 3; m <= m_max; ++m)
        if (f.divisible(m)) t.push_back({FreeClass::m_unitary, m});
    if (f.balanced) t.push_back({FreeClass::free_unitary});
    if (f.alternating) t.push_back({FreeClass::r_diagonal});
    if (f.mixed_pairs) t.push_back({FreeClass::circular});
    return t;
}

std::vector<ClassicalClassTag> classical_base(const PatternFacts& f, bool selfadjoint, int m_max) {
    std::vector<ClassicalClassTag> t;
    if (f.even) t.push_back({ClassicalClass::symmetric});
    if (f.pairs) t.push_back({ClassicalClass::orthogonal});
    if (f.pairs && selfadjoint) t.push_back({ClassicalClass::gaussian});
    for (int m = 3; m <= m_max; ++m)
        if (f.divisible(m)) t.push_back({ClassicalClass::m_unitary, m});
    if (f.balanced) t.push_back({ClassicalClass::unitary});
    if (f.mixed_pairs) t.push_back({ClassicalClass::complex_gaussian});
    return t;
}

template <class Tag>
void finish(Classification<Tag>& c) {
    std::sort(c.tags.begin(), c.tags.end());
    c.tags.erase(std::unique(c.tags.begin(), c.tags.end()), c.tags.end());
    for (const auto& t : c.tags) {
        bool dominated = std::any_of(c.tags.begin(), c.tags.end(), [&](const Tag& s) { return s != t && implies(s, t); });
        if (!dominated) c.minimal.push_back(t);
    }
}

template <class Tag, class BaseFn>
Classification<Tag> classify(const CumulantSpec& s, int order, int m_max, BaseFn base, Tag shifted_orth,
                             Tag shifted_circ, Tag orth, Tag circ, const std::vector<Tag>& canonical_centered,
                             std::string (*name)(Tag)) {
    if (order < 1) throw InputError("classification order must be positive");
    if (m_max < 3) throw InputError("m_max must be at least 3");
    Classification<Tag> c;
    c.order = std::min(order, s.order());
    c.m_max = m_max;
    auto nz = s.nonzero_patterns(c.order);
    bool shifted = std::any_of(nz.begin(), nz.end(), [](const StarPattern& d) { return d.size() == 1; });
    c.tags = base(PatternFacts(nz), s.selfadjoint(), m_max);
    if (shifted) {
        auto centered = base(PatternFacts(without_order_one(nz)), s.selfadjoint(), m_max);
        auto has = [&](const Tag& t) { return std::find(centered.begin(), centered.end(), t) != centered.end(); };
        if (has(orth)) c.tags.push_back(shifted_orth);
        if (has(circ)) c.tags.push_back(shifted_circ);
        for (const auto& t : centered)
            if (std::find(canonical_centered.begin(), canonical_centered.end(), t) == canonical_centered.end())
                c.noncanonical.push_back("SHIFTED " + name(t));
    }
    finish(c);
    return c;
}

std::string free_name(FreeClassTag t) { return to_string(t); }
std::string classical_name(ClassicalClassTag t) { return to_string(t); }

}  // namespace

std::string to_string(FreeClassTag t) { return tag_name(t, kFreeNames); }
std::string to_string(ClassicalClassTag t) { return tag_name(t, kClassicalNames); }
FreeClassTag parse_free_class(const std::string& s) { return parse_tag<FreeClass>(s, kFreeNames); }
ClassicalClassTag parse_classical_class(const std::string& s) { return parse_tag<ClassicalClass>(s, kClassicalNames); }

std::vector<FreeClassTag> free_class_list(int m) {
    return {{FreeClass::symmetric},          {FreeClass::orthogonal},   {FreeClass::semicircular},
            {FreeClass::shifted_orthogonal}, {FreeClass::m_unitary, m}, {FreeClass::free_unitary},
            {FreeClass::r_diagonal},         {FreeClass::circular},     {FreeClass::shifted_circular}};
}

template <class Tag>
bool Classification<Tag>::has(const Tag& t) const {
    return std::find(tags.begin(), tags.end(), t) != tags.end();
}
template struct Classification<FreeClassTag>;
template struct Classification<ClassicalClassTag>;

CumulantSpec::CumulantSpec(FunctionalTable entries, bool selfadjoint)
    : table_(std::move(entries)), selfadjoint_(selfadjoint) {
    if (table_.alphabet() != 1) throw InputError("cumulant spec describes a single variable");
    if (!selfadjoint_) return;
    const int p = table_.dim();
    for (int k = 1; k <= table_.order(); ++k) {
        const std::vector<Coeff>* rep = nullptr;
        std::string rep_name;
        for (const auto& d : all_patterns(k)) {
            const auto* t = table_.find(word_of(d));
            if (!t) continue;
            if (!rep) {
                rep = t;
                rep_name = d.to_string();
                continue;
            }
            for (std::size_t i = 0; i < t->size(); ++i)
                if (max_abs(Coeff((*t)[i] - (*rep)[i])) > kSnapTol * (1 + max_abs((*rep)[i])))
                    throw InputError("selfadjoint spec has different values on " + rep_name + " and " + d.to_string());
        }
        if (!rep) continue;
        if (p == 1 && std::abs((*rep)[0](0, 0).imag()) > kSnapTol)
            throw InputError("selfadjoint spec needs real cumulants (pattern " + rep_name + ")");
        std::vector<Coeff> value = *rep;
        for (const auto& d : all_patterns(k)) table_.set(word_of(d), value);
    }
}

CumulantSpec CumulantSpec::make(FunctionalTable entries, const Coeff& shift, bool selfadjoint) {
    const int p = entries.dim();
    if (shift.rows() != p || shift.cols() != p) throw InputError("shift has the wrong dimension");
    if (max_abs(shift) > 0) {
        if (entries.order() < 1) throw InputError("spec order must be at least 1 to carry a shift");
        if (selfadjoint && max_abs(Coeff(shift - shift.adjoint())) > kSnapTol)
            throw InputError("selfadjoint spec needs a selfadjoint shift");
        auto add = [&](const char* pat, const Coeff& v) {
            Word w = word_of(StarPattern::parse(pat));
            const auto* t = entries.find(w);
            Coeff base = t ? (*t)[0] : Coeff(Coeff::Zero(p, p));
            entries.set(w, {Coeff(base + v)});
        };
        add("1", shift);
        if (!selfadjoint || entries.find(word_of(StarPattern::parse("*"))))
            add("*", shift.adjoint());
    }
    return CumulantSpec(std::move(entries), selfadjoint);
}

Coeff CumulantSpec::shift() const {
    const auto* t = table_.find(word_of(StarPattern::parse("1")));
    return t ? (*t)[0] : Coeff(Coeff::Zero(dim(), dim()));
}

std::vector<StarPattern> CumulantSpec::nonzero_patterns(int order) const {
    std::vector<StarPattern> out;
    for (int k = 1; k <= std::min(order, table_.order()); ++k)
        for (const auto& d : all_patterns(k)) {
            const auto* t = table_.find(word_of(d));
            if (!t) continue;
            double mag = 0;
            for (const auto& c : *t) mag = std::max(mag, max_abs(c));
            if (mag > kSnapTol) out.push_back(d);
        }
    return out;
}

CumulantSpec spec_from_moments(const MomentOracle& m, bool free, int order, bool selfadjoint) {
    auto t = free ? moments_to_free_cumulants(m, order) : moments_to_classical_cumulants(m, order);
    return CumulantSpec(std::move(t), selfadjoint);
}

Classification<FreeClassTag> classify_free(const CumulantSpec& s, int order, int m_max) {
    std::vector<FreeClassTag> canonical{{FreeClass::orthogonal}, {FreeClass::circular}, {FreeClass::semicircular}};
    return classify<FreeClassTag>(s, order, m_max, free_base, {FreeClass::shifted_orthogonal},
                                  {FreeClass::shifted_circular}, {FreeClass::orthogonal}, {FreeClass::circular},
                                  canonical, free_name);
}

Classification<ClassicalClassTag> classify_classical(const CumulantSpec& s, int order, int m_max) {
    std::vector<ClassicalClassTag> canonical{
        {ClassicalClass::orthogonal}, {ClassicalClass::complex_gaussian}, {ClassicalClass::gaussian}};
    return classify<ClassicalClassTag>(s, order, m_max, classical_base, {ClassicalClass::shifted_orthogonal},
                                       {ClassicalClass::shifted_complex_gaussian}, {ClassicalClass::orthogonal},
                                       {ClassicalClass::complex_gaussian}, canonical, classical_name);
}

bool implies(FreeClassTag a, FreeClassTag b) {
    if (a == b) return true;
    using F = FreeClass;
    auto in = [&](std::initializer_list<F> ks) { return std::find(ks.begin(), ks.end(), b.kind) != ks.end(); };
    switch (a.kind) {
    case F::circular:
        return in({F::r_diagonal, F::free_unitary, F::m_unitary, F::symmetric, F::orthogonal});
    case F::r_diagonal:
        return in({F::free_unitary, F::m_unitary, F::symmetric});
    case F::free_unitary:
        return in({F::m_unitary, F::symmetric});
    case F::m_unitary:
        if (b.kind == F::symmetric) return a.m % 2 == 0;
        return b.kind == F::m_unitary && a.m % b.m == 0;
    case F::semicircular:
        return in({F::orthogonal, F::symmetric});
    case F::orthogonal:
        return b.kind == F::symmetric;
    case F::shifted_circular:
        return b.kind == F::shifted_orthogonal;
    default:
        return false;
    }
}

bool implies(ClassicalClassTag a, ClassicalClassTag b) {
    if (a == b) return true;
    using C = ClassicalClass;
    auto in = [&](std::initializer_list<C> ks) { return std::find(ks.begin(), ks.end(), b.kind) != ks.end(); };
    switch (a.kind) {
    case C::complex_gaussian:
        return in({C::unitary, C::m_unitary, C::symmetric, C::orthogonal});
    case C::unitary:
        return in({C::m_unitary, C::symmetric});
    case C::m_unitary:
        if (b.kind == C::symmetric) return a.m % 2 == 0;
        return b.kind == C::m_unitary && a.m % b.m == 0;
    case C::gaussian:
        return in({C::orthogonal, C::symmetric});
    case C::orthogonal:
        return b.kind == C::symmetric;
    case C::shifted_complex_gaussian:
        return b.kind == C::shifted_orthogonal;
    default:
        return false;
    }
}

std::vector<std::pair<FreeClassTag, FreeClassTag>> class_implications(int m_max) {
    using F = FreeClass;
    std::vector<std::pair<FreeClassTag, FreeClassTag>> e{
        {{F::circular}, {F::r_diagonal}},   {{F::circular}, {F::orthogonal}},
        {{F::r_diagonal}, {F::free_unitary}}, {{F::free_unitary}, {F::symmetric}},
        {{F::semicircular}, {F::orthogonal}}, {{F::orthogonal}, {F::symmetric}},
        {{F::shifted_circular}, {F::shifted_orthogonal}},
    };
    for (int m = 3; m <= m_max; ++m) {
        e.push_back({{F::free_unitary}, {F::m_unitary, m}});
        if (m % 2 == 0) e.push_back({{F::m_unitary, m}, {F::symmetric}});
        for (int d = 3; d < m; ++d)
            if (m % d == 0) e.push_back({{F::m_unitary, m}, {F::m_unitary, d}});
    }
    return e;
}

CumulantSpec sample_spec(FreeClassTag tag, std::uint64_t seed) {
    using F = FreeClass;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.5, 1.5);
    auto weight = [&](double w) { return seed == 0 ? w : w * u(rng); };
    int order = kDefaultClassOrder;
    if (tag.kind == F::m_unitary) {
        if (tag.m < 3) throw InputError("M_UNITARY needs m >= 3");
        order = std::max(order, tag.m);
    }
    FunctionalTable t(1, 1, order);
    auto pair = [&](const char* a, const char* b, double w) {
        double v = weight(w);
        t.set_scalar(word_of(StarPattern::parse(a)), v);
        t.set_scalar(word_of(StarPattern::parse(b)), v);
    };
    bool selfadjoint = false;
    Coeff shift = Coeff::Zero(1, 1);
    switch (tag.kind) {
    case F::symmetric:
        pair("1*", "*1", 1.0);
        pair("11", "**", 0.5);
        pair("1*1*", "*1*1", 0.25);
        break;
    case F::orthogonal:
        pair("1*", "*1", 1.0);
        pair("11", "**", 0.5);
        break;
    case F::shifted_orthogonal:
        shift(0, 0) = weight(1.0);
        [[fallthrough]];
    case F::semicircular:
        selfadjoint = true;
        t.set_scalar(word_of(StarPattern::parse("11")), weight(1.0));
        break;
    case F::m_unitary:
        pair("1*", "*1", 1.0);
        pair(StarPattern::repeat(Sym::one, tag.m).to_string().c_str(),
             StarPattern::repeat(Sym::star, tag.m).to_string().c_str(), 1.0);
        break;
    case F::free_unitary:
        pair("1*", "*1", 1.0);
        pair("11**", "**11", 1.0);
        break;
    case F::r_diagonal:
        pair("1*", "*1", 1.0);
        pair("1*1*", "*1*1", -1.0);
        break;
    case F::shifted_circular:
        shift(0, 0) = weight(1.0);
        [[fallthrough]];
    case F::circular:
        pair("1*", "*1", 1.0);
        break;
    }
    return CumulantSpec::make(std::move(t), shift, selfadjoint);
}

}  // namespace definetti
