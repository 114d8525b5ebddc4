#include "symprol/catalog.hpp"

#include <algorithm>
#include <array>

namespace symprol {

namespace {

const SymplecticSpace V2(2);

SymTensor T(const char* text)
{
    return parse_tensor(V2, text);
}

Scalar half(long n)
{
    return Scalar(n, 2);
}

} // namespace

namespace lorentz {
SymTensor e0() { return half(1) * T("p1^2 + p2^2"); }
SymTensor e1() { return half(1) * T("p1^2 - p2^2"); }
SymTensor e2() { return T("p1*p2"); }
SymTensor F() { return half(-1) * T("p1*q1 + p2*q2"); }
SymTensor K1() { return half(1) * T("p1*q1 - p2*q2"); }
SymTensor K2() { return half(1) * T("p1*q2 + p2*q1"); }
SymTensor L3() { return half(-1) * T("p1*q2 - p2*q1"); }
} // namespace lorentz

namespace {

// Basis order (p1, p2, q1, q2). images[i] is the image of basis vector i.
Matrix<Scalar> linear_map(const std::array<std::pair<int, int>, 4>& images)
{
    Matrix<Scalar> m(4, 4);
    for (int i = 0; i < 4; ++i)
        m(static_cast<std::size_t>(images[static_cast<std::size_t>(i)].first), static_cast<std::size_t>(i)) =
            Scalar(images[static_cast<std::size_t>(i)].second);
    return m;
}

} // namespace

Matrix<Scalar> complex_structure_J()
{
    // p1->q1, p2->q2, q1->-p1, q2->-p2
    return linear_map({{{2, 1}, {3, 1}, {0, -1}, {1, -1}}});
}

Matrix<Scalar> split_structure_J()
{
    // p1->q1, p2->-q2, q1->-p1, q2->p2
    return linear_map({{{2, 1}, {3, -1}, {0, -1}, {1, 1}}});
}

Matrix<Scalar> anti_symplectic_J()
{
    // p1->p2, p2->-p1, q1->-q2, q2->q1
    return linear_map({{{1, 1}, {0, -1}, {3, -1}, {2, 1}}});
}

bool ParamSpec::legal(const Scalar& value) const
{
    switch (kind) {
    case ParamKind::sign:
        return value == Scalar(1) || value == Scalar(-1);
    case ParamKind::sign_or_zero:
        return value == Scalar(1) || value == Scalar(-1) || value.is_zero();
    case ParamKind::nonzero:
        return !value.is_zero();
    case ParamKind::positive:
        return value.sign() > 0;
    }
    return false;
}

std::vector<Scalar> ParamSpec::representatives() const
{
    switch (kind) {
    case ParamKind::sign:
        return {Scalar(-1), Scalar(1)};
    case ParamKind::sign_or_zero:
        return {Scalar(-1), Scalar(0), Scalar(1)};
    case ParamKind::nonzero:
        return {Scalar(-1), Scalar(1), Scalar(2)};
    case ParamKind::positive:
        return {Scalar(1), Scalar(2)};
    }
    return {};
}

std::string ParamSpec::describe() const
{
    switch (kind) {
    case ParamKind::sign:
        return name + " in {-1,1}";
    case ParamKind::sign_or_zero:
        return name + " in {-1,0,1}";
    case ParamKind::nonzero:
        return name + " != 0";
    case ParamKind::positive:
        return name + " > 0";
    }
    return name;
}

namespace {

using Gens = std::vector<SymTensor>;

CatalogEntry fixed(std::string name, std::string group, std::string description, Gens gens, bool finite,
                   std::optional<std::size_t> h1 = std::nullopt, std::vector<std::string> aliases = {})
{
    CatalogEntry e;
    e.name = std::move(name);
    e.group = std::move(group);
    e.aliases = std::move(aliases);
    e.description = std::move(description);
    e.expected_dim = span_of(V2, 2, gens).dim();
    e.generators = [gens](const ParamMap&) { return gens; };
    e.finite_type = finite;
    e.expected_h1 = finite ? std::optional<std::size_t>(0) : h1;
    return e;
}

CatalogEntry with_param(std::string name, std::string group, std::string description, ParamSpec p,
                        std::function<Gens(const Scalar&)> make, std::size_t dim, bool finite,
                        std::vector<std::string> aliases = {})
{
    CatalogEntry e;
    e.name = std::move(name);
    e.group = std::move(group);
    e.aliases = std::move(aliases);
    e.description = std::move(description);
    const std::string key = p.name;
    e.params = {std::move(p)};
    e.generators = [key, make](const ParamMap& m) { return make(m.at(key)); };
    e.expected_dim = dim;
    e.finite_type = finite;
    e.expected_h1 = finite ? std::optional<std::size_t>(0) : std::nullopt;
    return e;
}

const ParamSpec eps{"eps", ParamKind::sign};
const ParamSpec eps0{"eps", ParamKind::sign_or_zero};
const ParamSpec a_nonzero{"a", ParamKind::nonzero};
const ParamSpec a_positive{"a", ParamKind::positive};
const ParamSpec lambda_nonzero{"lambda", ParamKind::nonzero};

std::vector<CatalogEntry> build_catalog()
{
    using namespace lorentz;
    std::vector<CatalogEntry> c;

    const Gens u2 = {T("p1^2 + q1^2"), T("p2^2 + q2^2"), T("p1*p2 + q1*q2"), T("p1*q2 - p2*q1")};
    const Gens u11 = {T("p1^2 + q1^2"), T("p2^2 + q2^2"), T("p1*p2 - q1*q2"), T("p1*q2 + p2*q1")};
    const Gens glp = {T("p1*q1"), T("p1*q2"), T("p2*q1"), T("p2*q2")};
    const Gens s5 = {T("3*p1*q1 + p2*q2"), T("3*p1*q2 + p2^2"), T("p2*q1 - q2^2")};

    // maximal subalgebras of sp4 and the whole algebra
    c.push_back(fixed("s1", "maximal", "sp(V1)+sp(V2), V_i = span(p_i, q_i)",
                      {T("p1^2"), T("p1*q1"), T("q1^2"), T("p2^2"), T("p2*q2"), T("q2^2")}, false, 8));
    c.push_back(fixed("s2=u2", "maximal", "stabilizer of the complex structure p_j -> q_j (unitary algebra)", u2, true,
                      0, {"s2", "u2"}));
    c.push_back(fixed("s3=u11", "maximal", "stabilizer of the split complex structure (pseudo-unitary algebra)", u11,
                      true, 0, {"s3", "u11"}));
    c.push_back(fixed("s4=sl2C", "maximal", "commutant of a complex structure J with J*Omega = -Omega",
                      {T("p1^2 - p2^2"), T("p1*p2"), T("q1^2 - q2^2"), T("q1*q2"), T("p1*q1 + p2*q2"),
                       T("p1*q2 - p2*q1")},
                      false, 8, {"s4", "sl2C"}));
    c.push_back(fixed("s5=sl2^4", "maximal", "irreducible sl2 acting on S^3(R^2)", s5, true, 0, {"s5"}));
    c.push_back(fixed("p1", "maximal", "parabolic QP + S^2(P), stabilizer of the Lagrangian plane P",
                      {T("p1*q1"), T("p1*q2"), T("p2*q1"), T("p2*q2"), T("p1^2"), T("p1*p2"), T("p2^2")}, false, 10));
    c.push_back(fixed("p2", "maximal", "parabolic gl(W) + heis(W), stabilizer of the isotropic line R p1",
                      {T("p2^2"), T("p2*q2"), T("q2^2"), T("p1*q1"), T("p1*p2"), T("p1*q2"), T("p1^2")}, false, 11));
    {
        Gens all;
        for (const auto& m : sym_basis(2, 2))
            all.push_back(SymTensor::monomial(2, m));
        c.push_back(fixed("sp4", "maximal", "the whole of sp(V) = S^2(V)", all, false, 20));
    }
    c.push_back(fixed("S2P", "maximal", "abelian ideal S^2(P) of p1", {T("p1^2"), T("p1*p2"), T("p2^2")}, false, 4));

    // maximal finite-type subalgebras of sp4
    c.push_back(fixed("maxfin.1", "maxfin", "unitary algebra u2", u2, true));
    c.push_back(fixed("maxfin.2", "maxfin", "pseudo-unitary algebra u(1,1)", u11, true));
    c.push_back(fixed("maxfin.3", "maxfin", "reductive subalgebra QP = gl(P)", glp, true, 0, {"gl(P)", "QP"}));
    c.push_back(fixed("maxfin.4", "maxfin", "irreducible singular sl2 on S^3(R^2)", s5, true));
    c.push_back(fixed("maxfin.5", "maxfin", "compact plus noncompact Cartan: so2(V1) + R diag(V2)",
                      {T("p1^2 + q1^2"), T("p2*q2")}, true));
    c.push_back(with_param(
        "maxfin.6", "maxfin", "solvable: span(p1q1 + eps p2^2, p2q1)", eps,
        [](const Scalar& e) { return Gens{T("p1*q1") + e * T("p2^2"), T("p2*q1")}; }, 2, true, {"D_{4,12}"}));
    c.push_back(with_param(
        "maxfin.7", "maxfin", "line span(p2^2 + q2^2 + eps p1^2)", eps,
        [](const Scalar& e) { return Gens{T("p2^2 + q2^2") + e * T("p1^2")}; }, 1, true));

    // maximal finite-type subalgebras of s1 (Cartan pairs, diagonal, twisted diagonal)
    c.push_back(fixed("s1sub.h1.so2+so2", "s1sub", "Cartan pair so2 + so2", {T("p1^2 + q1^2"), T("p2^2 + q2^2")}, true));
    c.push_back(fixed("s1sub.h1.so2+diag", "s1sub", "Cartan pair so2 + diag", {T("p1^2 + q1^2"), T("p2*q2")}, true));
    c.push_back(fixed("s1sub.h1.diag+so2", "s1sub", "Cartan pair diag + so2", {T("p1*q1"), T("p2^2 + q2^2")}, true));
    c.push_back(fixed("s1sub.h1.diag+diag", "s1sub", "Cartan pair diag + diag", {T("p1*q1"), T("p2*q2")}, true));
    c.push_back(fixed("s1sub.h2", "s1sub", "diagonal sl2",
                      {T("p1^2 + p2^2"), T("p1*q1 + p2*q2"), T("q1^2 + q2^2")}, true));
    c.push_back(fixed("s1sub.h3", "s1sub", "diagonal sl2 twisted by Ad diag(1,-1)",
                      {T("p1^2 - p2^2"), T("p1*q1 + p2*q2"), T("q1^2 - q2^2")}, true));

    // maximal finite-type subalgebras of p1
    c.push_back(fixed("p1max.1", "p1max", "co(1,2) = QP", glp, true));
    c.push_back(fixed("p1max.2.e0", "p1max", "normalizer of R e0 in co(1,2), plus R e0", {F(), L3(), e0()}, true));
    c.push_back(fixed("p1max.2.e2", "p1max", "normalizer of R e2 in co(1,2), plus R e2", {F(), K1(), e2()}, true));
    c.push_back(with_param(
        "p1max.3.D412", "p1max", "nonsplitting F - K1 + eps(e0 - e1), K2 + L3", eps,
        [](const Scalar& e) { return Gens{F() - K1() + e * (e0() - e1()), K2() + L3()}; }, 2, true));
    c.push_back(with_param(
        "p1max.3.D413", "p1max", "nonsplitting F + K1/2, K2 + L3 + eps(e0 + e1)", eps,
        [](const Scalar& e) { return Gens{F() + half(1) * K1(), K2() + L3() + e * (e0() + e1())}; }, 2, true));
    c.push_back(with_param(
        "p1max.3.D614", "p1max", "nonsplitting F + K1 + eps(e0 + e1), e2", eps,
        [](const Scalar& e) { return Gens{F() + K1() + e * (e0() + e1()), e2()}; }, 2, true));

    // finite-type subalgebras of p1 not contained in QP (similitude-algebra labels)
    c.push_back(fixed("p1fin.F_{6,5}", "p1fin", "R e2", {e2()}, true, 0, {"F_{6,5}"}));
    c.push_back(fixed("p1fin.F_{6,6}", "p1fin", "R e0", {e0()}, true, 0, {"F_{6,6}"}));
    c.push_back(fixed("p1fin.F_{3,5}", "p1fin", "K1, e2", {K1(), e2()}, true, 0, {"F_{3,5}"}));
    c.push_back(fixed("p1fin.F_{5,3}", "p1fin", "L3, e0", {L3(), e0()}, true, 0, {"F_{5,3}"}));
    c.push_back(fixed("p1fin.DF_{6,5}", "p1fin", "F, e2", {F(), e2()}, true, 0, {"DF_{6,5}"}));
    c.push_back(fixed("p1fin.DF_{6,6}", "p1fin", "F, e0", {F(), e0()}, true, 0, {"DF_{6,6}"}));
    c.push_back(fixed("p1fin.DF_{3,5}", "p1fin", "F, K1, e2", {F(), K1(), e2()}, true, 0, {"DF_{3,5}"}));
    c.push_back(fixed("p1fin.DF_{5,3}", "p1fin", "F, L3, e0", {F(), L3(), e0()}, true, 0, {"DF_{5,3}"}));
    c.push_back(with_param(
        "p1fin.~F_{3,9}", "p1fin", "K1 + a e2", a_nonzero, [](const Scalar& a) { return Gens{K1() + a * e2()}; }, 1,
        true, {"~F_{3,9}"}));
    c.push_back(with_param(
        "p1fin.~F_{4,7}", "p1fin", "K2 + L3 + eps(e0 + e1)", eps,
        [](const Scalar& e) { return Gens{K2() + L3() + e * (e0() + e1())}; }, 1, true, {"~F_{4,7}"}));
    c.push_back(with_param(
        "p1fin.~F_{5,6}", "p1fin", "L3 + a e0", a_nonzero, [](const Scalar& a) { return Gens{L3() + a * e0()}; }, 1,
        true, {"~F_{5,6}"}));
    c.push_back(with_param(
        "p1fin.D_{4,12}", "p1fin", "F - K1 + eps(e0 - e1), K2 + L3", eps,
        [](const Scalar& e) { return Gens{F() - K1() + e * (e0() - e1()), K2() + L3()}; }, 2, true));
    c.push_back(with_param(
        "p1fin.D_{4,13}", "p1fin", "F + K1/2, K2 + L3 + eps(e0 + e1)", eps,
        [](const Scalar& e) { return Gens{F() + half(1) * K1(), K2() + L3() + e * (e0() + e1())}; }, 2, true,
        {"D_{4,13}"}));
    c.push_back(with_param(
        "p1fin.D_{4,13}'", "p1fin", "span(p1q1 + 3p2q2, p2q1 + eps p1^2)", eps,
        [](const Scalar& e) { return Gens{T("p1*q1 + 3*p2*q2"), T("p2*q1") + e * T("p1^2")}; }, 2, true));
    c.push_back(with_param(
        "p1fin.D_{6,13}", "p1fin", "F + a K1, e2", a_positive, [](const Scalar& a) { return Gens{F() + a * K1(), e2()}; },
        2, true, {"D_{6,13}"}));
    c.push_back(with_param(
        "p1fin.D_{6,14}", "p1fin", "F + K1 + eps(e0 + e1), e2", eps,
        [](const Scalar& e) { return Gens{F() + K1() + e * (e0() + e1()), e2()}; }, 2, true, {"D_{6,14}"}));
    c.push_back(with_param(
        "p1fin.D_{6,15}", "p1fin", "F + a L3, e0", a_nonzero, [](const Scalar& a) { return Gens{F() + a * L3(), e0()}; },
        2, true, {"D_{6,15}"}));
    c.push_back(with_param(
        "p1fin.D_{6,22}", "p1fin", "F + K1 + eps(e0 + e1)", eps,
        [](const Scalar& e) { return Gens{F() + K1() + e * (e0() + e1())}; }, 1, true, {"D_{6,22}"}));

    // subalgebras of the ideal sl(W) + heis(W) of p2
    c.push_back(with_param(
        "p2sub.i", "p2sub", "span(p2^2, p2q2 + eps p1^2, p1p2)", eps0,
        [](const Scalar& e) { return Gens{T("p2^2"), T("p2*q2") + e * T("p1^2"), T("p1*p2")}; }, 3, false));
    c.push_back(with_param(
        "p2sub.ii", "p2sub", "span(p2^2 + eps p1^2, p1p2)", eps0,
        [](const Scalar& e) { return Gens{T("p2^2") + e * T("p1^2"), T("p1*p2")}; }, 2, false));
    c.push_back(with_param(
        "p2sub.iii", "p2sub", "span(p2q2 + eps p1^2, p1p2)", eps0,
        [](const Scalar& e) { return Gens{T("p2*q2") + e * T("p1^2"), T("p1*p2")}; }, 2, true));
    c.push_back(fixed("p2sub.iv", "p2sub", "span(p1p2)", {T("p1*p2")}, true));
    c.push_back(fixed("p2sub.v", "p2sub", "sl(W)", {T("p2^2"), T("p2*q2"), T("q2^2")}, false, 4));
    c.push_back(with_param(
        "p2sub.vi", "p2sub", "span(p2^2, p2q2 + eps p1^2)", eps0,
        [](const Scalar& e) { return Gens{T("p2^2"), T("p2*q2") + e * T("p1^2")}; }, 2, false));
    c.push_back(with_param(
        "p2sub.vii", "p2sub", "span(p2q2 + eps p1^2)", eps0,
        [](const Scalar& e) { return Gens{T("p2*q2") + e * T("p1^2")}; }, 1, true));
    c.push_back(with_param(
        "p2sub.viii", "p2sub", "span(p2^2 + q2^2 + eps p1^2)", eps0,
        [](const Scalar& e) { return Gens{T("p2^2 + q2^2") + e * T("p1^2")}; }, 1, true));
    c.push_back(with_param(
        "p2sub.ix", "p2sub", "span(p2^2 + eps p1^2)", eps,
        [](const Scalar& e) { return Gens{T("p2^2") + e * T("p1^2")}; }, 1, true));
    c.push_back(with_param(
        "p2sub.x", "p2sub", "span(p2^2 + eps p1q2)", eps,
        [](const Scalar& e) { return Gens{T("p2^2") + e * T("p1*q2")}; }, 1, true));

    // splitting subalgebras meeting heis(W), and codimension-one extensions by p1q1-type elements
    c.push_back(fixed("p2ext.b2+Rp1p2", "p2ext", "splitting b2 + R p1p2", {T("p2^2"), T("p2*q2"), T("p1*p2")}, false));
    c.push_back(fixed("p2ext.n2+Rp1p2", "p2ext", "splitting n2 + R p1p2", {T("p2^2"), T("p1*p2")}, false));
    c.push_back(fixed("p2ext.diag+Rp1p2", "p2ext", "splitting R diag(1,-1) + R p1p2", {T("p2*q2"), T("p1*p2")}, true));
    c.push_back(with_param(
        "p2ext.lambda", "p2ext", "span(p1p2, p1q1 + lambda p2q2)", lambda_nonzero,
        [](const Scalar& l) { return Gens{T("p1*p2"), T("p1*q1") + l * T("p2*q2")}; }, 2, true));
    c.push_back(with_param(
        "p2ext.eps", "p2ext", "span(p1p2, p1q1 + eps p2^2)", eps,
        [](const Scalar& e) { return Gens{T("p1*p2"), T("p1*q1") + e * T("p2^2")}; }, 2, true));

    // maximal finite-type subalgebras of p2
    c.push_back(fixed("p2max.1", "p2max", "graded span(p2q2, p1q1, p1p2)", {T("p2*q2"), T("p1*q1"), T("p1*p2")}, true));
    c.push_back(fixed("p2max.2", "p2max", "graded span(p2^2 + q2^2, p1q1)", {T("p2^2 + q2^2"), T("p1*q1")}, true));
    c.push_back(with_param(
        "p2max.3", "p2max", "span(p2q2 + eps p1^2, p1p2)", eps,
        [](const Scalar& e) { return Gens{T("p2*q2") + e * T("p1^2"), T("p1*p2")}; }, 2, true));
    c.push_back(with_param(
        "p2max.4", "p2max", "span(p2^2 + q2^2 + eps p1^2)", eps,
        [](const Scalar& e) { return Gens{T("p2^2 + q2^2") + e * T("p1^2")}; }, 1, true));
    c.push_back(with_param(
        "p2max.5", "p2max", "span(p2^2 + eps p1^2, p1q1 + p2q2)", eps,
        [](const Scalar& e) { return Gens{T("p2^2") + e * T("p1^2"), T("p1*q1 + p2*q2")}; }, 2, true));
    c.push_back(with_param(
        "p2max.6", "p2max", "span(p2^2 + eps p1q2, 3p1q1 + p2q2)", eps,
        [](const Scalar& e) { return Gens{T("p2^2") + e * T("p1*q2"), T("3*p1*q1 + p2*q2")}; }, 2, true));

    std::sort(c.begin(), c.end(), [](const CatalogEntry& a, const CatalogEntry& b) { return a.name < b.name; });
    return c;
}

} // namespace

const std::vector<CatalogEntry>& catalog()
{
    static const std::vector<CatalogEntry> entries = build_catalog();
    return entries;
}

const CatalogEntry& find_entry(std::string_view name)
{
    for (const auto& e : catalog())
        if (e.name == name)
            return e;
    const CatalogEntry* found = nullptr;
    for (const auto& e : catalog())
        for (const auto& a : e.aliases)
            if (a == name) {
                if (found)
                    throw InputError("ambiguous catalog alias '" + std::string(name) + "'");
                found = &e;
            }
    if (!found)
        throw InputError("unknown catalog entry '" + std::string(name) + "'");
    return *found;
}

void check_params(const CatalogEntry& e, const ParamMap& params)
{
    for (const auto& spec : e.params) {
        auto it = params.find(spec.name);
        if (it == params.end())
            throw InputError(e.name + ": missing parameter (" + spec.describe() + ")");
        if (!spec.legal(it->second))
            throw InputError(e.name + ": illegal value " + spec.name + "=" + it->second.str() + " (requires " +
                             spec.describe() + ")");
    }
    for (const auto& [k, v] : params) {
        const bool known = std::any_of(e.params.begin(), e.params.end(), [&](const ParamSpec& s) { return s.name == k; });
        if (!known)
            throw InputError(e.name + ": unexpected parameter '" + k + "'");
    }
}

LinearSubalgebra instantiate(const CatalogEntry& e, const ParamMap& params)
{
    check_params(e, params);
    return make_subalgebra(V2, e.generators(params));
}

LinearSubalgebra instantiate(std::string_view name, const ParamMap& params)
{
    return instantiate(find_entry(name), params);
}

std::string params_str(const ParamMap& p)
{
    std::string out;
    for (const auto& [k, v] : p)
        out += (out.empty() ? "" : ",") + k + "=" + v.str();
    return out;
}

VerifyReport verify_entry(const CatalogEntry& e, const ParamMap& params, const WitnessGrid& grid)
{
    VerifyReport r;
    r.name = e.name;
    r.params = params;
    check_params(e, params);
    const auto gens = e.generators(params);
    LinearSubalgebra h{V2, span_of(V2, 2, gens), false};
    r.dim = h.dim();
    if (auto bad = closure_violation(V2, h.span)) {
        r.failures.push_back("not closed: [" + bad->first.str() + ", " + bad->second.str() + "]");
        return r;
    }
    r.closed = true;
    h.closure_checked = true;
    if (r.dim != e.expected_dim)
        r.failures.push_back("dim " + std::to_string(r.dim) + " expected " + std::to_string(e.expected_dim));
    r.verdict = finite_type_verdict(h, grid, 4, Exec::serial);
    r.dim_h1 = r.verdict.dim_h1;
    const TypeKind want = e.finite_type ? TypeKind::finite : TypeKind::infinite;
    if (r.verdict.kind != want)
        r.failures.push_back("verdict " + to_string(r.verdict.kind) + " expected " + to_string(want));
    if (e.expected_h1 && r.dim_h1 != *e.expected_h1)
        r.failures.push_back("dim h1 " + std::to_string(r.dim_h1) + " expected " + std::to_string(*e.expected_h1));
    if (r.verdict.kind == TypeKind::finite && r.dim > 4)
        r.failures.push_back("finite type of dim " + std::to_string(r.dim) + " > 4");
    if (r.verdict.witness) {
        if (tensor_rank(V2, *r.verdict.witness) != 1)
            r.failures.push_back("witness does not have rank one");
        if (!complexify(h.span).contains(r.verdict.witness->coordinates(2)))
            r.failures.push_back("witness outside the span");
    }
    return r;
}

std::vector<ParamMap> representative_params(const CatalogEntry& e)
{
    std::vector<ParamMap> out{ParamMap{}};
    for (const auto& spec : e.params) {
        std::vector<ParamMap> next;
        for (const auto& base : out)
            for (const auto& v : spec.representatives()) {
                ParamMap m = base;
                m[spec.name] = v;
                next.push_back(std::move(m));
            }
        out = std::move(next);
    }
    return out;
}

std::vector<VerifyReport> verify_all(const WitnessGrid& grid, Exec exec)
{
    std::vector<std::pair<const CatalogEntry*, ParamMap>> tasks;
    for (const auto& e : catalog())
        for (auto& p : representative_params(e))
            tasks.emplace_back(&e, std::move(p));
    std::vector<VerifyReport> out(tasks.size());
    const long n = static_cast<long>(tasks.size());
#pragma omp parallel for schedule(dynamic, 1) if (exec == Exec::parallel)
    for (long i = 0; i < n; ++i) {
        const auto& [e, p] = tasks[static_cast<std::size_t>(i)];
        out[static_cast<std::size_t>(i)] = verify_entry(*e, p, grid);
    }
    return out;
}

// ---------------------------------------------------------------------------

namespace sl2 {

namespace {
Subspace<Scalar> span3(std::vector<Vec<Scalar>> v)
{
    return Subspace<Scalar>::span(3, v);
}
} // namespace

Subspace<Scalar> zero() { return Subspace<Scalar>(3); }
Subspace<Scalar> so2() { return span3({{Scalar(1), Scalar(0), Scalar(1)}}); }
Subspace<Scalar> diag() { return span3({{Scalar(0), Scalar(1), Scalar(0)}}); }
Subspace<Scalar> n2() { return span3({{Scalar(1), Scalar(0), Scalar(0)}}); }
Subspace<Scalar> b2() { return span3({{Scalar(1), Scalar(0), Scalar(0)}, {Scalar(0), Scalar(1), Scalar(0)}}); }
Subspace<Scalar> full() { return Subspace<Scalar>::full(3); }

Vec<Scalar> bracket(const Vec<Scalar>& x, const Vec<Scalar>& y)
{
    static const SymplecticSpace V1(1);
    return poisson_bracket(V1, SymTensor::from_coordinates(1, 2, x), SymTensor::from_coordinates(1, 2, y))
        .coordinates(2);
}

Matrix<Scalar> ad_diag()
{
    Matrix<Scalar> m(3, 3);
    m(0, 0) = Scalar(-1);
    m(1, 1) = Scalar(1);
    m(2, 2) = Scalar(-1);
    return m;
}

} // namespace sl2

namespace {

bool closed3(const Subspace<Scalar>& s)
{
    for (std::size_t i = 0; i < s.dim(); ++i)
        for (std::size_t j = i + 1; j < s.dim(); ++j)
            if (!s.contains(sl2::bracket(s.vector(i), s.vector(j))))
                return false;
    return true;
}

bool ideal3(const Subspace<Scalar>& i, const Subspace<Scalar>& a)
{
    if (!a.contains(i))
        return false;
    for (std::size_t x = 0; x < a.dim(); ++x)
        for (std::size_t y = 0; y < i.dim(); ++y)
            if (!i.contains(sl2::bracket(a.vector(x), i.vector(y))))
                return false;
    return true;
}

std::vector<Vec<Scalar>> quotient_basis(const Subspace<Scalar>& a, const Subspace<Scalar>& a0)
{
    std::vector<Vec<Scalar>> reduced;
    for (std::size_t i = 0; i < a.dim(); ++i)
        reduced.push_back(a0.reduce(a.vector(i)));
    return Subspace<Scalar>::span(3, reduced).vectors();
}

// Monomials (p_i^2, p_i q_i, q_i^2) of V_i inside S^2(V), n = 2.
std::array<Monomial, 3> sl2_monomials(int side)
{
    const auto p = static_cast<std::uint8_t>(V2.p(side));
    const auto q = static_cast<std::uint8_t>(V2.q(side));
    return {Monomial{p, p}, Monomial{p, q}, Monomial{q, q}};
}

SymTensor embed(const Vec<Scalar>& x, int side)
{
    SymTensor t(2, 2);
    const auto mons = sl2_monomials(side);
    for (std::size_t i = 0; i < 3; ++i)
        t.add_term(mons[i], x[i]);
    return t;
}

Vec<Scalar> project(const SymTensor& t, int side)
{
    Vec<Scalar> out(3);
    const auto mons = sl2_monomials(side);
    for (std::size_t i = 0; i < 3; ++i)
        out[i] = t.coefficient(mons[i]);
    return out;
}

} // namespace

std::string quintuple_violation(const GoursatQuintuple& q)
{
    if (!closed3(q.a))
        return "A is not a subalgebra";
    if (!closed3(q.b))
        return "B is not a subalgebra";
    if (!ideal3(q.a0, q.a))
        return "A0 is not an ideal of A";
    if (!ideal3(q.b0, q.b))
        return "B0 is not an ideal of B";
    if (q.quotient_basis != quotient_basis(q.a, q.a0))
        return "quotient basis is not canonical";
    if (q.a.dim() - q.a0.dim() != q.b.dim() - q.b0.dim())
        return "quotients have different dimensions";
    if (q.images.size() != q.quotient_basis.size())
        return "theta has the wrong number of images";
    for (const auto& img : q.images)
        if (!q.b.contains(img) || q.b0.reduce(img) != img)
            return "theta image is not a reduced element of B";
    if (Subspace<Scalar>::span(3, q.images).dim() != q.images.size())
        return "theta is not injective";
    const auto quot = Subspace<Scalar>::span(3, q.quotient_basis);
    for (std::size_t i = 0; i < q.quotient_basis.size(); ++i)
        for (std::size_t j = i + 1; j < q.quotient_basis.size(); ++j) {
            const auto c = quot.coordinates(q.a0.reduce(sl2::bracket(q.quotient_basis[i], q.quotient_basis[j])));
            if (!c)
                return "bracket of quotient representatives leaves A";
            Vec<Scalar> lhs(3, Scalar(0));
            for (std::size_t k = 0; k < c->size(); ++k)
                for (std::size_t x = 0; x < 3; ++x)
                    lhs[x] += (*c)[k] * q.images[k][x];
            if (lhs != q.b0.reduce(sl2::bracket(q.images[i], q.images[j])))
                return "theta is not a homomorphism";
        }
    return "";
}

GoursatQuintuple make_quintuple(const Subspace<Scalar>& a, const Subspace<Scalar>& a0, const Subspace<Scalar>& b,
                                const Subspace<Scalar>& b0, const Matrix<Scalar>& theta)
{
    if (a.ambient() != 3 || a0.ambient() != 3 || b.ambient() != 3 || b0.ambient() != 3 || theta.rows() != 3 ||
        theta.cols() != 3)
        throw MathError("make_quintuple: sl2 data must be 3-dimensional");
    if (!a.contains(a0) || !b.contains(b0))
        throw MathError("make_quintuple: A0 must lie in A and B0 in B");
    GoursatQuintuple q{a, a0, b, b0, quotient_basis(a, a0), {}};
    for (const auto& v : q.quotient_basis) {
        const auto img = theta.apply(v);
        if (!b.contains(img))
            throw MathError("make_quintuple: theta maps outside B");
        q.images.push_back(b0.reduce(img));
    }
    if (auto why = quintuple_violation(q); !why.empty())
        throw MathError("make_quintuple: " + why);
    return q;
}

LinearSubalgebra goursat_subalgebra(const GoursatQuintuple& q)
{
    if (auto why = quintuple_violation(q); !why.empty())
        throw MathError("goursat_subalgebra: " + why);
    std::vector<SymTensor> gens;
    for (const auto& v : q.a0.vectors())
        gens.push_back(embed(v, 1));
    for (const auto& v : q.b0.vectors())
        gens.push_back(embed(v, 2));
    for (std::size_t i = 0; i < q.quotient_basis.size(); ++i)
        gens.push_back(embed(q.quotient_basis[i], 1) + embed(q.images[i], 2));
    return make_subalgebra(V2, gens);
}

GoursatQuintuple goursat_quintuple(const LinearSubalgebra& h)
{
    const auto basis = h.basis();
    for (const auto& t : basis) {
        if (!(embed(project(t, 1), 1) + embed(project(t, 2), 2) == t))
            throw MathError("goursat_quintuple: subalgebra is not contained in s1");
    }
    if (!h.closure_checked && !is_subalgebra(h.space, h.span))
        throw MathError("goursat_quintuple: input is not closed under the bracket");
    std::vector<Vec<Scalar>> pi1;
    std::vector<Vec<Scalar>> pi2;
    for (const auto& t : basis) {
        pi1.push_back(project(t, 1));
        pi2.push_back(project(t, 2));
    }
    const std::size_t m = basis.size();
    const auto P1 = Matrix<Scalar>::from_columns(pi1, 3);
    const auto P2 = Matrix<Scalar>::from_columns(pi2, 3);
    auto image_of_kernel = [&](const Matrix<Scalar>& kill, const Matrix<Scalar>& keep) {
        std::vector<Vec<Scalar>> out;
        if (m == 0)
            return Subspace<Scalar>(3);
        for (const auto& k : kernel(kill).vectors())
            out.push_back(keep.apply(k));
        return Subspace<Scalar>::span(3, out);
    };
    GoursatQuintuple q;
    q.a = Subspace<Scalar>::span(3, pi1);
    q.b = Subspace<Scalar>::span(3, pi2);
    q.a0 = image_of_kernel(P2, P1);
    q.b0 = image_of_kernel(P1, P2);
    q.quotient_basis = quotient_basis(q.a, q.a0);
    for (const auto& v : q.quotient_basis) {
        const auto x = solve(P1, v);
        if (!x)
            throw MathError("goursat_quintuple: internal inconsistency");
        q.images.push_back(q.b0.reduce(P2.apply(*x)));
    }
    if (auto why = quintuple_violation(q); !why.empty())
        throw MathError("goursat_quintuple: " + why);
    return q;
}

std::vector<NamedQuintuple> finite_type_quintuples()
{
    std::vector<NamedQuintuple> out;
    const auto id = Matrix<Scalar>::identity(3);
    const std::vector<std::pair<std::string, Subspace<Scalar>>> cartan = {
        {"0", sl2::zero()}, {"diag", sl2::diag()}, {"so2", sl2::so2()}};
    for (const auto& [na, a] : cartan)
        for (const auto& [nb, b] : cartan)
            out.push_back({"cartan(" + na + "," + nb + ")", make_quintuple(a, a, b, b, id)});
    for (const long lambda : {1L, 2L, -1L}) {
        const auto theta = Scalar(lambda) * id;
        out.push_back({"diag^d(" + std::to_string(lambda) + ")",
                       make_quintuple(sl2::diag(), sl2::zero(), sl2::diag(), sl2::zero(), theta)});
        out.push_back({"so2^d(" + std::to_string(lambda) + ")",
                       make_quintuple(sl2::so2(), sl2::zero(), sl2::so2(), sl2::zero(), theta)});
    }
    const std::vector<std::pair<std::string, Subspace<Scalar>>> twisted = {
        {"n2", sl2::n2()}, {"b2", sl2::b2()}, {"sl2", sl2::full()}};
    for (const auto& [nf, f] : twisted) {
        out.push_back({nf + "^d", make_quintuple(f, sl2::zero(), f, sl2::zero(), id)});
        out.push_back({nf + "^d(Ad)", make_quintuple(f, sl2::zero(), f, sl2::zero(), sl2::ad_diag())});
    }
    return out;
}

} // namespace symprol
