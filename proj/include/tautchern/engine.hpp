#pragma once

#include <optional>
#include <string>

#include "tautchern/serialize.hpp"

namespace tautchern {

/*
 * Request/response layer shared by the command-line tool and the tests.
 * Documents are byte-stable: identical requests render to identical bytes
 * whatever the worker count, and timing never enters the document.
 */
struct ComputationRequest {
    enum class Command { ChernChar, ChernClasses, BnClass, DrcDivisor, ValidatePhi };
    enum class Mode { Theorem, Oracle, Both };
    enum class Format { JsonDoc, Text };
    enum class BnMode { Symbolic, Expanded };

    Command command = Command::ChernChar;
    MarkedSpace space;
    DivisorSpec divisor;
    std::optional<OneNodePolarisation> phi;
    int r = 0;
    int smax = 0;
    bool negate = false;  // chern-classes of the K-theoretic negative
    Mode mode = Mode::Theorem;
    BnMode bn_mode = BnMode::Symbolic;
    Format format = Format::JsonDoc;
    std::string drc_i, drc_j;
    int workers = 1;
};

struct ResultDocument {
    Json body;            // canonical document
    bool agreement = true;  // meaningful for mode=both
};

const char* command_name(ComputationRequest::Command c);
const char* mode_name(ComputationRequest::Mode m);

// Executes the request. Validation problems throw std::invalid_argument.
ResultDocument run_request(const ComputationRequest& req);

std::string render_output(const ResultDocument& doc, ComputationRequest::Format format);

}  // namespace tautchern
