#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "tautchern/engine.hpp"

namespace {

using tautchern::ComputationRequest;
using tautchern::Json;

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep))
        if (!item.empty()) out.push_back(item);
    return out;
}

// Strict integer parse: rejects trailing garbage such as "1.5".
long long parse_int(const std::string& s, const char* what) {
    try {
        return tautchern::BigInt::from_string(s).to_ll();
    } catch (const std::exception&) {
        throw std::invalid_argument(std::string(what) + ": expected an integer, got '" + s + "'");
    }
}

// "p=v" entries.
void parse_d_entries(const std::vector<std::string>& entries, Json& d) {
    for (const auto& raw : entries) {
        auto eq = raw.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("--d expects marking=value, got '" + raw + "'");
        d[raw.substr(0, eq)] = parse_int(raw.substr(eq + 1), "--d");
    }
}

// "h:p+q+...=v" entries.
void parse_a_entries(const std::vector<std::string>& entries, Json& a) {
    for (const auto& raw : entries) {
        auto colon = raw.find(':');
        auto eq = raw.rfind('=');
        if (colon == std::string::npos || eq == std::string::npos || eq < colon)
            throw std::invalid_argument("--a expects h:labels=value, got '" + raw + "'");
        Json entry;
        entry["h"] = static_cast<int>(parse_int(raw.substr(0, colon), "--a"));
        entry["S"] = split(raw.substr(colon + 1, eq - colon - 1), '+');
        entry["value"] = parse_int(raw.substr(eq + 1), "--a");
        a.push_back(entry);
    }
}

int worker_count() {
    if (const char* env = std::getenv("TAUTCHERN_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tautchern: exact Chern character and Brill-Noether classes on moduli of curves"};
    app.require_subcommand(1);

    std::string config_path, out_path, markings_csv = "1", mode = "theorem", format = "json";
    std::string bn_mode = "symbolic", phi_path, mark_i, mark_j;
    int g = -1, smax = -1, r = 0;
    long long ell = 0;
    bool negate = false;
    std::vector<std::string> d_entries, a_entries;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "JSON config file; flags win on conflict");
        cmd->add_option("--g", g, "genus (>= 1)");
        cmd->add_option("--markings", markings_csv, "comma-separated marking labels (must include 1)");
        cmd->add_option("--out", out_path, "write the document here instead of stdout");
        cmd->add_option("--format", format, "json | text");
    };

    CLI::App* chern_char = app.add_subcommand("chern-char", "Chern character of the derived pushforward");
    CLI::App* chern_classes = app.add_subcommand("chern-classes", "Chern classes via exponential inversion");
    CLI::App* bn_class = app.add_subcommand("bn-class", "Brill-Noether pullback class");
    CLI::App* drc = app.add_subcommand("drc-divisor", "stabilized marked-difference divisor preset");
    CLI::App* vphi = app.add_subcommand("validate-phi", "nondegeneracy check for a one-node polarisation");

    for (CLI::App* cmd : {chern_char, chern_classes, bn_class}) {
        add_common(cmd);
        cmd->add_option("--ell", ell, "coefficient of the twisted relative canonical class");
        cmd->add_option("--d", d_entries, "section coefficients, marking=value")->delimiter(',');
        cmd->add_option("--a", a_entries, "boundary coefficients, h:p+q=value")->delimiter(',');
        cmd->add_option("--smax", smax, "top degree (default: the dimension)");
        cmd->add_option("--phi-file", phi_path, "one-node polarisation JSON");
    }
    chern_char->add_option("--mode", mode, "theorem | oracle | both");
    chern_classes->add_flag("--negate", negate, "classes of the K-theoretic negative");
    bn_class->add_option("--r", r, "number of sections minus one in the degeneracy condition");
    bn_class->add_option("--bn-mode", bn_mode, "symbolic | expanded");
    add_common(drc);
    drc->add_option("--i", mark_i, "first marking")->required();
    drc->add_option("--j", mark_j, "second marking")->required();
    add_common(vphi);
    vphi->add_option("--phi-file", phi_path, "one-node polarisation JSON")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        // Config file under the flags: explicit flags win.
        Json config = Json::object();
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw std::invalid_argument("cannot open config file " + config_path);
            in >> config;
        }
        if (g < 0 && config.contains("g")) g = config.at("g").get<int>();
        if (markings_csv == "1" && config.contains("markings")) {
            markings_csv.clear();
            for (const auto& m : config.at("markings"))
                markings_csv += (markings_csv.empty() ? "" : ",") + m.get<std::string>();
        }
        if (ell == 0 && config.contains("ell")) ell = config.at("ell").get<long long>();
        if (smax < 0 && config.contains("smax")) smax = config.at("smax").get<int>();
        if (g < 0) throw std::invalid_argument("missing --g");

        ComputationRequest req;
        req.space = tautchern::MarkedSpace::make(g, split(markings_csv, ','));
        req.workers = worker_count();

        Json d = config.contains("d") ? config.at("d") : Json::object();
        Json a = config.contains("a") ? config.at("a") : Json::array();
        parse_d_entries(d_entries, d);
        parse_a_entries(a_entries, a);
        Json divisor_json;
        divisor_json["ell"] = ell;
        divisor_json["d"] = d;
        divisor_json["a"] = a;
        req.divisor = tautchern::divisor_from_json(req.space, divisor_json);

        if (smax < 0) smax = req.space.dimension();
        if (smax > req.space.dimension())
            throw std::invalid_argument("--smax exceeds the dimension 3g-3+|P| = " +
                                        std::to_string(req.space.dimension()));
        req.smax = smax;
        req.r = r;
        req.negate = negate;

        if (!phi_path.empty()) {
            std::ifstream in(phi_path);
            if (!in) throw std::invalid_argument("cannot open phi file " + phi_path);
            Json j;
            in >> j;
            req.phi = tautchern::phi_from_json(req.space, j);
        } else if (config.contains("phi")) {
            req.phi = tautchern::phi_from_json(req.space, config.at("phi"));
        }

        if (*chern_char) req.command = ComputationRequest::Command::ChernChar;
        if (*chern_classes) req.command = ComputationRequest::Command::ChernClasses;
        if (*bn_class) req.command = ComputationRequest::Command::BnClass;
        if (*drc) req.command = ComputationRequest::Command::DrcDivisor;
        if (*vphi) req.command = ComputationRequest::Command::ValidatePhi;
        req.drc_i = mark_i;
        req.drc_j = mark_j;

        if (mode == "theorem") req.mode = ComputationRequest::Mode::Theorem;
        else if (mode == "oracle") req.mode = ComputationRequest::Mode::Oracle;
        else if (mode == "both") req.mode = ComputationRequest::Mode::Both;
        else throw std::invalid_argument("--mode must be theorem, oracle or both");
        if (bn_mode == "symbolic") req.bn_mode = ComputationRequest::BnMode::Symbolic;
        else if (bn_mode == "expanded") req.bn_mode = ComputationRequest::BnMode::Expanded;
        else throw std::invalid_argument("--bn-mode must be symbolic or expanded");
        if (format == "json") req.format = ComputationRequest::Format::JsonDoc;
        else if (format == "text") req.format = ComputationRequest::Format::Text;
        else throw std::invalid_argument("--format must be json or text");

        auto start = std::chrono::steady_clock::now();
        tautchern::ResultDocument doc = tautchern::run_request(req);
        auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - start)
                           .count();
        // Timing stays out of the document so identical requests render to
        // identical bytes.
        std::cerr << "elapsed_ms=" << elapsed << " workers=" << req.workers << "\n";

        std::string rendered = tautchern::render_output(doc, req.format);
        if (out_path.empty()) {
            std::cout << rendered;
        } else {
            std::ofstream out(out_path);
            if (!out) throw std::invalid_argument("cannot open output file " + out_path);
            out << rendered;
        }

        if (req.command == ComputationRequest::Command::ChernChar &&
            req.mode == ComputationRequest::Mode::Both && !doc.agreement)
            return 3;
        if (req.command == ComputationRequest::Command::ValidatePhi && !doc.agreement) return 2;
        return 0;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    }
}
