#ifndef RTPIPE_PIPELINE_LANG_HPP
#define RTPIPE_PIPELINE_LANG_HPP

#include <string>
#include <string_view>
#include <vector>

#include "model.hpp"

namespace rtpipe {

// Pipeline sentences look like:
//
//   *(A | B), C | D | E, F [100/s, 10000us]
//
// A leading '*' selects lossless Fifo mode and makes the first QoS value a
// throughput; otherwise the pipeline is Async and the first value is a
// tolerable loss fraction. Stages are split on '|' at parenthesis depth 0,
// commas separate parallel chains, and adjacent stages are fully
// cross-connected (every chain tail feeds every chain head of the next
// stage). Omitting the bracketed QoS clause yields a best-effort pipeline.

enum class TokenKind {
  Star, Name, Pipe, Comma, LParen, RParen, LBracket, RBracket,
  Number, Unit, Slash, End
};

struct SpecToken {
  TokenKind kind;
  std::string_view text;
  size_t position;  // byte offset
};

struct ParseError {
  std::string code;  // SyntaxError | EmptyStage | UnknownFunction
  std::string message;
  size_t position = 0;
  bool ok() const { return code.empty(); }
};

// Lexing is total; unknown bytes surface as a SyntaxError from the parser.
std::vector<SpecToken> lex_pipeline(std::string_view text);

struct ParseResult {
  PipelineGraph graph;
  ParseError error;  // error.ok() when the graph is usable
};

ParseResult parse_pipeline(std::string_view text, const FunctionRepository& repo);

struct UnparseResult {
  std::string text;
  std::string error;  // "NotStageStructured: ..." when the graph has no sentence
  bool ok() const { return error.empty(); }
};

// Inverse of parse_pipeline up to graph isomorphism: feeding the result back
// through the parser reproduces the same pipes, edges, mode and QoS.
UnparseResult unparse(const PipelineGraph& graph);

bool graphs_isomorphic(const PipelineGraph& a, const PipelineGraph& b);

}  // namespace rtpipe

#endif
