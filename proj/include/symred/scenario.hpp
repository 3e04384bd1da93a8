#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "symred/expr.hpp"
#include "symred/pipeline.hpp"
#include "symred/toml.hpp"

namespace symred {

struct ScenarioOptions {
    OrderTag order = OrderTag::degrevlex;
    std::uint32_t w_max = 3;
    std::int64_t graded_bound = 6;
    std::uint64_t seed = 0;
};

/// One space description loaded from a scenario file: the Hamiltonian data
/// plus either a point level or an orbit block, never both.
struct Scenario {
    std::string name;
    HamiltonianSpace space;
    std::optional<std::vector<Rational>> mu;
    std::optional<OrbitPresentation> orbit;
    ScenarioOptions options;
};

namespace detail {

inline PolyMatrix parse_matrix(const toml::Value& rows, const RingPtr& ring, const std::string& what) {
    const auto& arr = rows.as_array(what);
    std::size_t r = arr.size();
    if (r == 0) throw ValidationError(what + " must have at least one row");
    std::size_t c = arr[0].as_array(what + " row").size();
    PolyMatrix m(ring, r, c);
    for (std::size_t i = 0; i < r; ++i) {
        const auto& row = arr[i].as_array(what + " row");
        if (row.size() != c) throw ValidationError(what + " rows have inconsistent lengths");
        for (std::size_t j = 0; j < c; ++j)
            m.at(i, j) = parse_poly(row[j].as_string(what + " entry"), ring);
    }
    return m;
}

} // namespace detail

inline Scenario parse_scenario(const std::string& text) {
    toml::Value doc = toml::parse(text);
    Scenario sc;
    sc.name = doc.at("name").as_string("name");

    std::vector<std::string> vars = doc.at("variables").string_array("variables");
    if (vars.empty()) throw ValidationError("variables must be nonempty");
    RingPtr ring = make_ring(vars);
    std::size_t n = vars.size();

    // omega
    if (!doc.has("omega")) throw ValidationError("missing [omega] section");
    PolyMatrix omega = detail::parse_matrix(doc.at("omega").at("rows"), ring, "omega");
    if (omega.rows() != n || omega.cols() != n)
        throw ValidationError("omega must be " + std::to_string(n) + "x" + std::to_string(n));

    // lie algebra
    if (!doc.has("lie")) throw ValidationError("missing [lie] section");
    const toml::Value& lieTab = doc.at("lie");
    std::vector<std::string> basis = lieTab.at("basis").string_array("lie.basis");
    if (basis.empty()) throw ValidationError("lie.basis must be nonempty");
    std::size_t r = basis.size();
    auto basisIndex = [&](const std::string& label) -> std::size_t {
        for (std::size_t i = 0; i < r; ++i)
            if (basis[i] == label) return i;
        throw ValidationError("unknown basis label '" + label + "' in lie.structure");
    };
    std::vector<std::vector<std::vector<Rational>>> c(
        r, std::vector<std::vector<Rational>>(r, std::vector<Rational>(r, Rational(0))));
    std::vector<std::vector<std::vector<bool>>> seen(
        r, std::vector<std::vector<bool>>(r, std::vector<bool>(r, false)));
    if (lieTab.has("structure")) {
        for (const auto& entry : lieTab.at("structure").as_array("lie.structure")) {
            const auto& quad = entry.as_array("lie.structure entry");
            if (quad.size() != 4)
                throw ValidationError("lie.structure entries are [i, j, k, coefficient]");
            std::size_t i = basisIndex(quad[0].as_string("structure label"));
            std::size_t j = basisIndex(quad[1].as_string("structure label"));
            std::size_t k = basisIndex(quad[2].as_string("structure label"));
            Rational v = Rational::from_string(quad[3].as_string("structure coefficient"));
            if (i == j && !v.is_zero())
                throw ValidationError("structure constants not antisymmetric: [x,x] != 0");
            if (seen[i][j][k])
                throw ValidationError("duplicate or conflicting structure entry (" + basis[i] + "," +
                                      basis[j] + "," + basis[k] + ")");
            seen[i][j][k] = seen[j][i][k] = true;
            c[i][j][k] = v;
            c[j][i][k] = -v;
        }
    }
    LieAlgebraData lie = LieAlgebraData::make(basis, std::move(c));

    // action fields
    if (!doc.has("action")) throw ValidationError("missing [action] section");
    std::vector<std::vector<MultiPoly>> action;
    for (std::size_t i = 0; i < r; ++i) {
        const toml::Value& tab = doc.at("action");
        if (!tab.has(basis[i]))
            throw ValidationError("missing action field for basis element '" + basis[i] + "'");
        std::vector<std::string> comps = tab.at(basis[i]).string_array("action." + basis[i]);
        if (comps.size() != n)
            throw ValidationError("action." + basis[i] + " must have " + std::to_string(n) +
                                  " components");
        std::vector<MultiPoly> field;
        for (const auto& s : comps) field.push_back(parse_poly(s, ring));
        action.push_back(std::move(field));
    }

    // moment map
    if (!doc.has("moment")) throw ValidationError("missing [moment] section");
    std::vector<MultiPoly> moment;
    for (std::size_t i = 0; i < r; ++i) {
        const toml::Value& tab = doc.at("moment");
        if (!tab.has(basis[i]))
            throw ValidationError("missing moment component for basis element '" + basis[i] + "'");
        moment.push_back(parse_poly(tab.at(basis[i]).as_string("moment." + basis[i]), ring));
    }

    bool reductive = true;
    if (doc.has("reductive")) reductive = doc.at("reductive").as_boolean("reductive");

    sc.space = HamiltonianSpace::make(ring, omega, lie, action, moment, reductive);

    // level: exactly one of mu / orbit
    bool hasMu = doc.has("mu");
    bool hasOrbit = doc.has("orbit");
    if (hasMu == hasOrbit)
        throw ValidationError("exactly one of 'mu' and '[orbit]' must be present");
    if (hasMu) {
        std::vector<Rational> mu;
        for (const auto& s : doc.at("mu").string_array("mu"))
            mu.push_back(Rational::from_string(s));
        if (mu.size() != r) throw ValidationError("mu must have one value per basis element");
        sc.mu = std::move(mu);
    } else {
        const toml::Value& ot = doc.at("orbit");
        std::vector<std::string> ycoords = ot.at("coordinates").string_array("orbit.coordinates");
        if (ycoords.size() != r)
            throw ValidationError("orbit.coordinates must have one name per basis element");
        RingPtr yring = make_ring(ycoords);
        std::vector<MultiPoly> ideal;
        for (const auto& s : ot.at("ideal").string_array("orbit.ideal"))
            ideal.push_back(parse_poly(s, yring));
        if (ideal.empty()) throw ValidationError("orbit.ideal must be nonempty");
        PolyMatrix form = detail::parse_matrix(ot.at("form"), yring, "orbit.form");
        MultiPoly den = parse_poly(ot.at("denominator").as_string("orbit.denominator"), yring);
        sc.orbit = OrbitPresentation::make(yring, std::move(ideal), std::move(form), std::move(den));
    }

    if (doc.has("options")) {
        const toml::Value& opts = doc.at("options");
        if (opts.has("order")) {
            std::string o = opts.at("order").as_string("options.order");
            if (o == "degrevlex") sc.options.order = OrderTag::degrevlex;
            else if (o == "lex") sc.options.order = OrderTag::lex;
            else throw ValidationError("options.order must be degrevlex or lex");
        }
        if (opts.has("w_max"))
            sc.options.w_max = static_cast<std::uint32_t>(opts.at("w_max").as_integer("options.w_max"));
        if (opts.has("graded_bound"))
            sc.options.graded_bound = opts.at("graded_bound").as_integer("options.graded_bound");
        if (opts.has("seed"))
            sc.options.seed = static_cast<std::uint64_t>(opts.at("seed").as_integer("options.seed"));
    }
    return sc;
}

inline Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open scenario file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return parse_scenario(ss.str());
    } catch (const Error& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

/// CLI-level overrides that take precedence over the scenario's own options.
struct OptionOverrides {
    std::optional<OrderTag> order;
    std::optional<std::uint32_t> w_max;
    std::optional<std::int64_t> graded_bound;
    std::optional<std::uint64_t> seed;
    bool cross_check = false;
};

inline PipelineOptions effective_options(const Scenario& sc, const OptionOverrides& ov) {
    PipelineOptions opt;
    opt.order = MonomialOrder{ov.order.value_or(sc.options.order), 0};
    opt.w_max = ov.w_max.value_or(sc.options.w_max);
    opt.graded_bound = ov.graded_bound.value_or(sc.options.graded_bound);
    opt.seed = ov.seed.value_or(sc.options.seed);
    opt.cross_check = ov.cross_check;
    return opt;
}

inline ReductionReport run_scenario(const Scenario& sc, const OptionOverrides& ov = {}) {
    PipelineOptions opt = effective_options(sc, ov);
    if (sc.mu) return verify_reduction(sc.space, *sc.mu, opt, sc.name);
    return verify_orbit_reduction(sc.space, *sc.orbit, opt, sc.name);
}

/// Tor table of the derived level set alone: form-independent, so it runs at
/// any level value (and for orbit scenarios without certifying the chart form).
inline std::vector<TorSummary> run_tor(const Scenario& sc, const OptionOverrides& ov = {}) {
    PipelineOptions opt = effective_options(sc, ov);
    if (sc.mu) {
        KoszulCdga cdga = KoszulCdga::build(sc.space.ring, sc.space.moment, *sc.mu);
        return detail::tor_table(cdga, opt);
    }
    validate_orbit(*sc.orbit, sc.space.lie);
    ShiftedSpace s = build_shifted(sc.space, *sc.orbit);
    KoszulCdga cdga = KoszulCdga::build(s.ring, s.moment, s.zero_level(), s.constraints);
    return detail::tor_table(cdga, opt);
}

} // namespace symred
