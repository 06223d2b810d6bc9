#include "tautchern/engine.hpp"

#include <stdexcept>

#include "tautchern/poly.hpp"

namespace tautchern {

const char* command_name(ComputationRequest::Command c) {
    switch (c) {
        case ComputationRequest::Command::ChernChar: return "chern-char";
        case ComputationRequest::Command::ChernClasses: return "chern-classes";
        case ComputationRequest::Command::BnClass: return "bn-class";
        case ComputationRequest::Command::DrcDivisor: return "drc-divisor";
        case ComputationRequest::Command::ValidatePhi: return "validate-phi";
    }
    return "?";
}

const char* mode_name(ComputationRequest::Mode m) {
    switch (m) {
        case ComputationRequest::Mode::Theorem: return "theorem";
        case ComputationRequest::Mode::Oracle: return "oracle";
        case ComputationRequest::Mode::Both: return "both";
    }
    return "?";
}

namespace {

Json request_echo(const ComputationRequest& req) {
    Json j;
    j["command"] = command_name(req.command);
    j["divisor"] = divisor_to_json(req.divisor);
    j["smax"] = req.smax;
    j["mode"] = mode_name(req.mode);
    if (req.command == ComputationRequest::Command::BnClass) {
        j["r"] = req.r;
        j["bn_mode"] = req.bn_mode == ComputationRequest::BnMode::Symbolic ? "symbolic" : "expanded";
    }
    if (req.command == ComputationRequest::Command::ChernClasses) j["negate"] = req.negate;
    if (req.command == ComputationRequest::Command::DrcDivisor) {
        j["i"] = req.drc_i;
        j["j"] = req.drc_j;
    }
    if (req.phi) j["phi"] = phi_to_json(*req.phi);
    return j;
}

std::size_t generator_count(const std::map<int, TautClass>& by_degree) {
    std::size_t n = 0;
    for (const auto& [degree, cls] : by_degree) n += cls.size();
    return n;
}

Json degree_diff(const std::map<int, TautClass>& a, const std::map<int, TautClass>& b) {
    Json diff = Json::array();
    for (const auto& [degree, cls] : a) {
        const TautClass& other = b.at(degree);
        if (cls == other) continue;
        Json d;
        d["degree"] = degree;
        d["theorem"] = taut_class_to_json(cls);
        d["oracle"] = taut_class_to_json(other);
        diff.push_back(d);
    }
    return diff;
}

}  // namespace

ResultDocument run_request(const ComputationRequest& req) {
    ResultDocument doc;
    doc.body["request"] = request_echo(req);

    switch (req.command) {
        case ComputationRequest::Command::ChernChar: {
            std::map<int, TautClass> primary, secondary;
            bool ran_both = req.mode == ComputationRequest::Mode::Both;
            if (req.mode != ComputationRequest::Mode::Oracle)
                primary = chern_char_theorem(req.divisor, req.smax, req.workers).ch;
            if (req.mode != ComputationRequest::Mode::Theorem)
                secondary = chern_char_oracle(req.divisor, req.smax, req.workers).ch;
            const auto& shown = req.mode == ComputationRequest::Mode::Oracle ? secondary : primary;
            doc.body["degrees"] = graded_to_json(shown);
            Json meta;
            meta["generators"] = generator_count(shown);
            if (ran_both) {
                doc.agreement = true;
                for (const auto& [degree, cls] : primary)
                    if (!(cls == secondary.at(degree))) doc.agreement = false;
                meta["agreement"] = doc.agreement;
                if (!doc.agreement) doc.body["diff"] = degree_diff(primary, secondary);
            }
            doc.body["meta"] = meta;
            break;
        }
        case ComputationRequest::Command::ChernClasses: {
            GradedChernData ch = chern_char_theorem(req.divisor, req.smax, req.workers);
            auto classes = invert_to_chern(ch, req.smax, req.negate);
            doc.body["degrees"] = graded_to_json(classes);
            Json meta;
            meta["generators"] = generator_count(classes);
            doc.body["meta"] = meta;
            break;
        }
        case ComputationRequest::Command::BnClass: {
            DivisorSpec divisor = req.divisor;
            if (req.phi) divisor = modify_divisor(divisor, *req.phi);
            BNRequest bn = BNRequest::make(req.r, divisor);
            doc.body["rho"] = bn.rho();
            doc.body["codim"] = divisor.space.genus - bn.rho();
            if (req.bn_mode == ComputationRequest::BnMode::Symbolic) {
                doc.body["polynomial"] = bn_pullback_symbolic(bn).str("c");
            } else {
                TautClass cls = bn_pullback_expanded(bn, req.smax, req.workers);
                doc.body["terms"] = taut_class_to_json(cls);
            }
            if (req.phi) doc.body["modified_divisor"] = divisor_to_json(divisor);
            break;
        }
        case ComputationRequest::Command::DrcDivisor: {
            DivisorSpec d = drc_divisor(req.space, req.drc_i, req.drc_j);
            doc.body["divisor"] = divisor_to_json(d);
            break;
        }
        case ComputationRequest::Command::ValidatePhi: {
            if (!req.phi) throw std::invalid_argument("validate-phi: no polarisation supplied");
            PhiDiagnostics diag = validate_phi(*req.phi);
            doc.body["ok"] = diag.ok;
            Json failures = Json::array();
            for (const auto& [part, reason] : diag.failures) {
                Json f = bipartition_to_json(part);
                f["reason"] = reason;
                failures.push_back(f);
            }
            doc.body["failures"] = failures;
            doc.agreement = diag.ok;
            break;
        }
    }
    return doc;
}

namespace {

std::string render_degrees_text(const Json& degrees) {
    std::string out;
    for (const auto& entry : degrees) {
        out += "deg " + std::to_string(entry.at("degree").get<int>()) + ": ";
        const auto& terms = entry.at("terms");
        if (terms.empty()) {
            out += "0\n";
            continue;
        }
        bool first = true;
        for (const auto& term : terms) {
            if (!first) out += " + ";
            first = false;
            out += "(" + term.at("coeff").get<std::string>() + ")*" +
                   term.at("text").get<std::string>();
        }
        out += "\n";
    }
    return out;
}

}  // namespace

std::string render_output(const ResultDocument& doc, ComputationRequest::Format format) {
    if (format == ComputationRequest::Format::JsonDoc) return doc.body.dump(2) + "\n";
    std::string out;
    out += "command: " + doc.body.at("request").at("command").get<std::string>() + "\n";
    if (doc.body.contains("degrees")) out += render_degrees_text(doc.body.at("degrees"));
    if (doc.body.contains("terms")) {
        Json wrap = Json::array();
        Json one;
        one["degree"] = doc.body.at("codim").get<int>();
        one["terms"] = doc.body.at("terms");
        wrap.push_back(one);
        out += render_degrees_text(wrap);
    }
    if (doc.body.contains("polynomial"))
        out += "class: " + doc.body.at("polynomial").get<std::string>() + "\n";
    if (doc.body.contains("divisor")) out += doc.body.at("divisor").dump() + "\n";
    if (doc.body.contains("ok"))
        out += std::string("ok: ") + (doc.body.at("ok").get<bool>() ? "true" : "false") + "\n";
    if (doc.body.contains("meta") && doc.body.at("meta").contains("agreement")) {
        out += std::string("agreement: ") +
               (doc.body.at("meta").at("agreement").get<bool>() ? "true" : "false") + "\n";
        if (doc.body.contains("diff")) out += "diff: " + doc.body.at("diff").dump() + "\n";
    }
    return out;
}

}  // namespace tautchern
