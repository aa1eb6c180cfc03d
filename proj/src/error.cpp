// SPDX-License-Identifier: Apache-2.0
#include "lemmagraph/error.hpp"

namespace lemmagraph {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::Validation: return "validation";
    case ErrorCode::Parse: return "parse";
    case ErrorCode::NotFound: return "not_found";
    case ErrorCode::Duplicate: return "duplicate";
    case ErrorCode::Constraint: return "constraint";
    case ErrorCode::Authentication: return "unauthenticated";
    case ErrorCode::Authorization: return "forbidden";
    case ErrorCode::Ontology: return "ontology";
    case ErrorCode::InUse: return "in_use";
    case ErrorCode::Arity: return "arity";
    case ErrorCode::RejectedInput: return "rejected_input";
    case ErrorCode::TemplateDefinition: return "template_definition";
    case ErrorCode::Syntax: return "syntax";
    case ErrorCode::Semantic: return "semantic";
    case ErrorCode::Evaluation: return "evaluation";
    case ErrorCode::DanglingEdge: return "dangling_edge";
    case ErrorCode::UnrecoverableStore: return "unrecoverable_store";
    case ErrorCode::Io: return "io";
    case ErrorCode::Config: return "config";
  }
  return "unknown";
}

}  // namespace lemmagraph
