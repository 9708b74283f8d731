#include "wittlift/report_json.hpp"

namespace wittlift {

using nlohmann::json;

json ring_elem_json(const RingElem& e) {
    json labels = json::array();
    for (const auto& s : e.ring()->basis())
        labels.push_back(s.name);
    return json{{"coords", e.coords()}, {"basis", labels}, {"text", e.to_string()}};
}

json descriptor_json(const RingDescriptor& d) {
    json out{{"family", family_name(d.family)},
             {"p", d.params.p},
             {"name", d.name()}};
    switch (d.family) {
    case RingFamily::Wm:
    case RingFamily::WmEps:
    case RingFamily::WmMixedEps:
        out["m"] = d.m;
        break;
    case RingFamily::PD:
    case RingFamily::PDEps:
    case RingFamily::PDEpsQuot:
        out["m"] = d.m;
        out["d"] = d.d;
        break;
    case RingFamily::Ramified:
        out["n"] = d.n;
        out["d"] = d.d;
        out["g"] = d.g ? json(*d.g) : json(nullptr);
        break;
    case RingFamily::ResidueSeries:
        out["d"] = d.d;
        break;
    }
    return out;
}

json ring_table_json(const ArtinTestRing& ring) {
    json basis = json::array();
    for (std::size_t i = 0; i < ring.dim(); ++i)
        basis.push_back(json{{"name", ring.basis()[i].name},
                             {"modulus", ring.coord_modulus(i)},
                             {"modulus_exponent", ring.basis()[i].mod_exp}});
    json products = json::array();
    for (std::size_t i = 0; i < ring.dim(); ++i)
        for (std::size_t j = i; j < ring.dim(); ++j) {
            const std::uint64_t* sc = ring.product(i, j);
            std::vector<std::uint64_t> coords(sc, sc + ring.dim());
            RingElem prod(ring.shared_from_this(), coords);
            products.push_back(json{{"left", ring.basis()[i].name},
                                    {"right", ring.basis()[j].name},
                                    {"coords", coords},
                                    {"text", prod.to_string()}});
        }
    json gens = json::array();
    for (const auto& g : ring.max_ideal_generators())
        gens.push_back(g.to_string());
    return json{{"descriptor", descriptor_json(ring.descriptor())},
                {"basis", basis},
                {"structure_constants", products},
                {"nilpotency_bound", ring.nilpotency_bound()},
                {"max_ideal_generators", gens},
                {"order", ring.order()}};
}

json certificate_json(const NoLiftCertificate& c) {
    json labels = json::array();
    for (const auto& [gen, coord] : c.row_labels)
        labels.push_back(json{{"generator", gen}, {"coordinate", coord}});
    return json{{"matrix", c.matrix},
                {"rhs", c.rhs},
                {"combination", c.combination},
                {"residual", c.residual},
                {"modulus_exponent", c.modulus_exponent},
                {"row_labels", labels}};
}

json witness_json(const Witness& w, const std::vector<std::string>& vars) {
    json images = json::array();
    for (std::size_t i = 0; i < w.images.size(); ++i) {
        json im = ring_elem_json(w.images[i]);
        im["var"] = i < vars.size() ? vars[i] : "T" + std::to_string(i);
        images.push_back(std::move(im));
    }
    return json{{"condition", w.condition},
                {"m", w.m},
                {"d", w.d},
                {"ring", descriptor_json(w.target)},
                {"images", images},
                {"certificate", certificate_json(w.certificate)}};
}

namespace {
const char* cell_status_name(CellStatus s) {
    switch (s) {
    case CellStatus::Passed: return "passed";
    case CellStatus::Refuted: return "refuted";
    case CellStatus::BudgetExhausted: return "budget_exhausted";
    case CellStatus::PrecisionLimited: return "precision_limited";
    }
    return "?";
}
} // namespace

json cell_json(const GridCell& cell) {
    json out{{"condition", cell.condition},
             {"m", cell.m},
             {"d", cell.d},
             {"status", cell_status_name(cell.report.status)},
             {"candidates_evaluated", cell.report.candidates_evaluated},
             {"well_defined", cell.report.well_defined_count},
             {"total_candidates", cell.report.total_candidates}};
    if (!cell.report.note.empty())
        out["note"] = cell.report.note;
    return out;
}

json probe_report_json(const ProbeReport& rep) {
    json out;
    switch (rep.verdict) {
    case ProbeVerdict::RefutedWithWitness:
        out["verdict"] = "refuted_with_witness";
        break;
    case ProbeVerdict::NoObstructionFound:
        out["verdict"] = "no_obstruction_found";
        break;
    case ProbeVerdict::PrecisionLimited:
        out["verdict"] = "precision_limited";
        break;
    }
    if (const auto* pt = std::get_if<WPoint>(&rep.point))
        out["condition_i"] = json{{"status", "point_found"}, {"point", pt->coordinates}};
    else
        out["condition_i"] = json{{"status", "unknown"},
                                  {"reason", std::get<WPointUnknown>(rep.point).reason}};
    out["translated"] = rep.translated;
    out["minimization"] = json{{"eliminated", rep.eliminated_vars},
                               {"remaining_vars", rep.remaining_vars},
                               {"generators_remaining", rep.generators_remaining}};
    out["m_star"] = rep.m_star ? json(*rep.m_star) : json(nullptr);
    json cells = json::array();
    for (const auto& cell : rep.cells)
        cells.push_back(cell_json(cell));
    out["cells"] = std::move(cells);
    out["witness"] =
        rep.witness ? witness_json(*rep.witness, rep.remaining_vars) : json(nullptr);
    out["caveats"] = rep.caveats;
    return out;
}

json t1_outcome_json(const T1LiftingOutcome& outcome, const AlgebraMap& X,
                     const AlgebraMap& Xprime) {
    json out;
    switch (outcome.status) {
    case T1LiftStatus::Surjective:
        out["status"] = "surjective";
        break;
    case T1LiftStatus::NotSurjective:
        out["status"] = "not_surjective";
        break;
    case T1LiftStatus::PrecisionLimited:
        out["status"] = "precision_limited";
        break;
    }
    out["classes_checked"] = outcome.classes_checked;
    out["source_ring"] = descriptor_json(X.target->descriptor());
    out["target_ring"] = descriptor_json(Xprime.target->descriptor());
    json base = json::array();
    for (std::size_t i = 0; i < X.images.size(); ++i) {
        json im = ring_elem_json(X.images[i]);
        im["var"] = (*X.pres.ctx.vars)[i];
        base.push_back(std::move(im));
    }
    out["base_images"] = std::move(base);
    if (outcome.witness) {
        json parts = json::array();
        for (std::size_t i = 0; i < outcome.witness->eps_parts.size(); ++i) {
            json part = ring_elem_json(outcome.witness->eps_parts[i]);
            part["var"] = (*Xprime.pres.ctx.vars)[i];
            parts.push_back(std::move(part));
        }
        out["witness_class_eps_parts"] = std::move(parts);
    } else {
        out["witness_class_eps_parts"] = json(nullptr);
    }
    if (!outcome.note.empty())
        out["note"] = outcome.note;
    return out;
}

json deligne_report_json(const DeligneReport& rep) {
    return json{{"p", rep.p},
                {"m", rep.m},
                {"lambda", rep.lambda},
                {"modulus", rep.modulus},
                {"p_lambda_p", rep.p_lambda_p},
                {"p2_lambda_pm1", rep.p2_lambda_pm1},
                {"s_power_zero", rep.s_power_zero},
                {"rprime_power_zero", rep.rprime_power_zero},
                {"r_coefficient", rep.r_coefficient},
                {"x_independent", rep.x_independent},
                {"t1_not_surjective", rep.t1_refuted},
                {"ok", rep.ok()},
                {"chain", rep.chain}};
}

} // namespace wittlift
