#include "puccilab/serialize.hpp"

#include <stdexcept>

namespace puccilab {

namespace {

std::string kind_name(TermKind k) {
    switch (k) {
        case TermKind::Power: return "power";
        case TermKind::Log: return "log";
        case TermKind::Exp: return "exp";
        case TermKind::ShiftedSquare: return "shifted_square";
        case TermKind::Constant: return "constant";
    }
    return "?";
}

TermKind kind_from_name(const std::string& name) {
    if (name == "power") return TermKind::Power;
    if (name == "log") return TermKind::Log;
    if (name == "exp") return TermKind::Exp;
    if (name == "shifted_square") return TermKind::ShiftedSquare;
    if (name == "constant") return TermKind::Constant;
    throw std::invalid_argument("unknown term kind '" + name + "'");
}

Json term_to_json(const BasisTerm& t) {
    Json params = Json::object();
    switch (t.kind) {
        case TermKind::Power: params["exponent"] = t.param; break;
        case TermKind::Exp: params["rate"] = t.param; break;
        case TermKind::ShiftedSquare: params["center"] = t.param; break;
        default: break;
    }
    return Json{{"kind", kind_name(t.kind)}, {"coef", t.coef}, {"params", params}};
}

BasisTerm term_from_json(const Json& j) {
    BasisTerm t;
    t.kind = kind_from_name(j.at("kind").get<std::string>());
    t.coef = j.at("coef").get<double>();
    const Json& params = j.at("params");
    switch (t.kind) {
        case TermKind::Power: t.param = params.at("exponent").get<double>(); break;
        case TermKind::Exp: t.param = params.at("rate").get<double>(); break;
        case TermKind::ShiftedSquare: t.param = params.at("center").get<double>(); break;
        default: t.param = 0.0; break;
    }
    return t;
}

}  // namespace

Json profile_to_json(const RadialPiecewise& f) {
    Json pieces = Json::array();
    for (const auto& piece : f.pieces) {
        Json terms = Json::array();
        for (const auto& t : piece) terms.push_back(term_to_json(t));
        pieces.push_back(std::move(terms));
    }
    return Json{{"dim", f.dim}, {"breakpoints", f.breakpoints}, {"pieces", pieces}};
}

RadialPiecewise profile_from_json(const Json& j) {
    RadialPiecewise f;
    f.dim = j.at("dim").get<int>();
    f.breakpoints = j.at("breakpoints").get<std::vector<double>>();
    for (const auto& piece : j.at("pieces")) {
        TermSum terms;
        for (const auto& t : piece) terms.push_back(term_from_json(t));
        f.pieces.push_back(std::move(terms));
    }
    f.validate();
    return f;
}

Json ellipticity_to_json(const EllipticityPair& e) {
    return Json{{"lambda", e.lambda}, {"Lambda", e.Lambda}, {"oracle_mode", e.oracle_mode}};
}

EllipticityPair ellipticity_from_json(const Json& j) {
    const double lambda = j.at("lambda").get<double>();
    const double Lambda = j.at("Lambda").get<double>();
    const bool oracle = j.value("oracle_mode", false);
    return oracle ? EllipticityPair::oracle(lambda, Lambda)
                  : EllipticityPair::strict(lambda, Lambda);
}

Json params_to_json(const FamilyParams& params) {
    Json j;
    if (const auto* p = std::get_if<ParamsN3>(&params)) {
        j = ellipticity_to_json(p->e);
        j["N"] = p->dim;
        j["c"] = p->c;
        j["d"] = p->d;
        j["epsilon"] = p->epsilon;
    } else if (const auto* p = std::get_if<ParamsN2>(&params)) {
        j = ellipticity_to_json(p->e);
        j["K"] = p->K;
        j["log_epsilon"] = p->log_epsilon;
    } else if (const auto* p = std::get_if<ParamsSmallNorm>(&params)) {
        j = ellipticity_to_json(p->e);
        j["N"] = p->dim;
        j["k"] = p->k;
    }
    return j;
}

FamilyParams params_from_json(Family family, const Json& j) {
    const EllipticityPair e = ellipticity_from_json(j);
    switch (family) {
        case Family::N3:
            return ParamsN3{j.at("N").get<int>(), e, j.at("c").get<double>(),
                            j.at("d").get<double>(), j.at("epsilon").get<double>()};
        case Family::N2: {
            if (j.contains("log_epsilon"))
                return ParamsN2{e, j.at("K").get<double>(), j.at("log_epsilon").get<double>()};
            return ParamsN2::from_epsilon(e, j.at("K").get<double>(), j.at("epsilon").get<double>());
        }
        case Family::SmallNorm:
            return ParamsSmallNorm{j.at("N").get<int>(), e, j.at("k").get<int>()};
    }
    throw std::logic_error("params_from_json: bad family");
}

Json instance_to_json(const ConstructionInstance& inst) {
    return Json{{"dim", inst.dim},
                {"domain_radius", inst.domain_radius},
                {"profile", profile_to_json(inst.u)},
                {"provenance",
                 Json{{"family", family_name(inst.provenance.family)},
                      {"scale", inst.provenance.scale},
                      {"params", params_to_json(inst.provenance.params)}}}};
}

ConstructionInstance instance_from_json(const Json& j) {
    const Json& prov = j.at("provenance");
    const Family family = family_from_name(prov.at("family").get<std::string>());
    const FamilyParams params = params_from_json(family, prov.at("params"));
    ConstructionInstance inst = build_family(family, params);
    const double scale = prov.value("scale", 1.0);
    if (scale != 1.0) inst = scale_instance(inst, scale);

    const RadialPiecewise stored = profile_from_json(j.at("profile"));
    if (stored.dim != inst.u.dim || stored.breakpoints != inst.u.breakpoints ||
        stored.pieces.size() != inst.u.pieces.size())
        throw std::invalid_argument("instance_from_json: stored profile does not match provenance");
    for (std::size_t i = 0; i < stored.pieces.size(); ++i) {
        const TermSum& a = stored.pieces[i];
        const TermSum& b = inst.u.pieces[i];
        if (a.size() != b.size())
            throw std::invalid_argument("instance_from_json: stored profile does not match provenance");
        for (std::size_t t = 0; t < a.size(); ++t)
            if (a[t].kind != b[t].kind || a[t].coef != b[t].coef || a[t].param != b[t].param)
                throw std::invalid_argument(
                    "instance_from_json: stored profile does not match provenance");
    }
    return inst;
}

}  // namespace puccilab
