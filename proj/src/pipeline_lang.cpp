#include "pipeline_lang.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <set>

namespace rtpipe {

namespace {

bool is_name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }

}  // namespace

std::vector<SpecToken> lex_pipeline(std::string_view text) {
  std::vector<SpecToken> out;
  size_t i = 0;
  bool unit_context = false;  // letters directly after a number or '/' are units
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      unit_context = false;
      continue;
    }
    size_t start = i;
    auto push = [&](TokenKind k, size_t len) {
      out.push_back({k, text.substr(start, len), start});
      i = start + len;
    };
    switch (c) {
      case '*': push(TokenKind::Star, 1); unit_context = false; continue;
      case '|': push(TokenKind::Pipe, 1); unit_context = false; continue;
      case ',': push(TokenKind::Comma, 1); unit_context = false; continue;
      case '(': push(TokenKind::LParen, 1); unit_context = false; continue;
      case ')': push(TokenKind::RParen, 1); unit_context = false; continue;
      case '[': push(TokenKind::LBracket, 1); unit_context = false; continue;
      case ']': push(TokenKind::RBracket, 1); unit_context = false; continue;
      case '/': push(TokenKind::Slash, 1); unit_context = true; continue;
      default: break;
    }
    if (is_digit(c) || (c == '.' && i + 1 < text.size() && is_digit(text[i + 1]))) {
      size_t j = i;
      bool dot = false;
      while (j < text.size() && (is_digit(text[j]) || (text[j] == '.' && !dot))) {
        if (text[j] == '.') dot = true;
        ++j;
      }
      push(TokenKind::Number, j - i);
      unit_context = true;
      continue;
    }
    if (is_name_start(c)) {
      size_t j = i;
      while (j < text.size() && is_name_char(text[j])) ++j;
      push(unit_context ? TokenKind::Unit : TokenKind::Name, j - i);
      unit_context = false;
      continue;
    }
    // Unknown byte: emit it as a one-byte token the parser will reject.
    push(TokenKind::Unit, 1);
    unit_context = false;
  }
  out.push_back({TokenKind::End, text.substr(text.size(), 0), text.size()});
  return out;
}

namespace {

struct Chain {
  std::vector<std::string> names;
  size_t position;
};
struct Stage {
  std::vector<Chain> chains;
  size_t position;
};

class Parser {
 public:
  Parser(std::string_view text, const FunctionRepository& repo)
      : tokens_(lex_pipeline(text)), repo_(repo) {}

  ParseResult run() {
    ParseResult result;
    bool lossless = accept(TokenKind::Star);

    std::vector<Stage> stages;
    stages.push_back(parse_stage());
    while (!failed_ && accept(TokenKind::Pipe)) stages.push_back(parse_stage());

    QosSpec qos;
    if (!failed_ && peek().kind == TokenKind::LBracket)
      qos = parse_qos(lossless);
    if (!failed_ && peek().kind != TokenKind::End)
      fail("SyntaxError", "expected '|', ',' or end of pipeline", peek().position);
    if (failed_) {
      result.error = error_;
      return result;
    }

    result.graph.mode = lossless ? CommMode::Fifo : CommMode::Async;
    result.graph.qos = qos;
    BufferKind kind = lossless ? BufferKind::Fifo : BufferKind::FourSlot;

    std::set<std::string> seen;
    for (const auto& stage : stages) {
      for (const auto& chain : stage.chains) {
        for (const auto& name : chain.names) {
          if (!repo_.find(name)) {
            result.error = {"UnknownFunction", name, chain.position};
            return result;
          }
          if (!seen.insert(name).second) {
            result.error = {"SyntaxError", "duplicate pipe name " + name,
                            chain.position};
            return result;
          }
          TunedPipe pipe;
          pipe.id = name;
          pipe.kind = PipeKind::Task;
          pipe.function = name;
          result.graph.pipes.push_back(std::move(pipe));
        }
      }
    }
    auto idx = [&result](const std::string& name) {
      return result.graph.find_pipe(name);
    };
    for (const auto& stage : stages)
      for (const auto& chain : stage.chains)
        for (size_t k = 0; k + 1 < chain.names.size(); ++k)
          result.graph.edges.push_back(
              {idx(chain.names[k]), idx(chain.names[k + 1]), kind});
    for (size_t s = 0; s + 1 < stages.size(); ++s)
      for (const auto& tail : stages[s].chains)
        for (const auto& head : stages[s + 1].chains)
          result.graph.edges.push_back(
              {idx(tail.names.back()), idx(head.names.front()), kind});
    return result;
  }

 private:
  const SpecToken& peek() const { return tokens_[pos_]; }
  const SpecToken& advance() { return tokens_[pos_++]; }
  bool accept(TokenKind k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }
  void fail(std::string code, std::string msg, size_t at) {
    if (!failed_) error_ = {std::move(code), std::move(msg), at};
    failed_ = true;
  }

  Stage parse_stage() {
    Stage stage{{}, peek().position};
    if (peek().kind == TokenKind::Pipe || peek().kind == TokenKind::End ||
        peek().kind == TokenKind::LBracket) {
      fail("EmptyStage", "expected chain", peek().position);
      return stage;
    }
    stage.chains.push_back(parse_chain());
    while (!failed_ && accept(TokenKind::Comma)) stage.chains.push_back(parse_chain());
    return stage;
  }

  Chain parse_chain() {
    Chain chain{{}, peek().position};
    if (accept(TokenKind::LParen)) {
      // Parenthesized groups are linear chains; '|' inside does not split stages.
      do {
        if (peek().kind != TokenKind::Name) {
          fail("SyntaxError", "expected name inside parentheses", peek().position);
          return chain;
        }
        chain.names.emplace_back(advance().text);
      } while (accept(TokenKind::Pipe));
      if (!accept(TokenKind::RParen))
        fail("SyntaxError", "expected ')'", peek().position);
      return chain;
    }
    if (peek().kind != TokenKind::Name) {
      fail(peek().kind == TokenKind::End || peek().kind == TokenKind::Pipe ||
                   peek().kind == TokenKind::LBracket
               ? "EmptyStage"
               : "SyntaxError",
           "expected chain", peek().position);
      return chain;
    }
    chain.names.emplace_back(advance().text);
    return chain;
  }

  double parse_number() {
    if (peek().kind != TokenKind::Number) {
      fail("SyntaxError", "expected number", peek().position);
      return 0;
    }
    const auto tok = advance();
    double value = 0;
    auto [p, ec] = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), value);
    if (ec != std::errc() || p != tok.text.data() + tok.text.size()) {
      fail("SyntaxError", "malformed number", tok.position);
      return 0;
    }
    return value;
  }

  QosSpec parse_qos(bool lossless) {
    QosSpec qos;
    qos.best_effort = false;
    size_t open = peek().position;
    accept(TokenKind::LBracket);

    double first = parse_number();
    if (failed_) return qos;
    if (lossless) {
      // throughput: NUMBER '/' 's'
      if (!accept(TokenKind::Slash)) {
        fail("SyntaxError", "expected '/s' after throughput value", peek().position);
        return qos;
      }
      if (peek().kind != TokenKind::Unit || peek().text != "s") {
        fail("SyntaxError", "expected unit 's'", peek().position);
        return qos;
      }
      advance();
      if (first <= 0) {
        fail("SyntaxError", "e2e_tput must be positive", open);
        return qos;
      }
      qos.e2e_tput_per_s = first;
    } else {
      if (first < 0 || first > 1) {
        fail("SyntaxError", "loss_rate must lie in [0,1]", open);
        return qos;
      }
      qos.loss_rate = first;
    }

    if (!accept(TokenKind::Comma)) {
      fail("SyntaxError", "expected ',' before delay", peek().position);
      return qos;
    }
    size_t delay_pos = peek().position;
    double delay = parse_number();
    if (failed_) return qos;
    if (peek().kind != TokenKind::Unit || (peek().text != "us" && peek().text != "ms")) {
      fail("SyntaxError", "expected delay unit 'us' or 'ms'", peek().position);
      return qos;
    }
    bool ms = peek().text == "ms";
    advance();
    double delay_us = ms ? delay * 1000.0 : delay;
    if (!(delay_us > 0) || delay_us > 9e15) {
      fail("SyntaxError", "e2e_delay must be positive", delay_pos);
      return qos;
    }
    qos.e2e_delay_us = static_cast<Micros>(std::llround(delay_us));

    if (!accept(TokenKind::RBracket))
      fail("SyntaxError", "expected ']'", peek().position);
    return qos;
  }

  std::vector<SpecToken> tokens_;
  const FunctionRepository& repo_;
  size_t pos_ = 0;
  bool failed_ = false;
  ParseError error_;
};

std::string format_fraction(double v) {
  char buf[32];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, p);
}

}  // namespace

ParseResult parse_pipeline(std::string_view text, const FunctionRepository& repo) {
  return Parser(text, repo).run();
}

UnparseResult unparse(const PipelineGraph& graph) {
  UnparseResult result;
  const size_t n = graph.pipes.size();
  if (n == 0) {
    result.error = "NotStageStructured: empty graph";
    return result;
  }
  auto succ = graph.successors();
  auto pred = graph.predecessors();

  std::vector<std::vector<std::vector<int>>> stages;  // stage -> chain -> nodes
  std::vector<std::vector<int>> chains;
  std::vector<bool> used(n, false);
  for (size_t i = 0; i < n; ++i)
    if (pred[i].empty()) chains.push_back({static_cast<int>(i)});
  std::sort(chains.begin(), chains.end(), [&graph](const auto& a, const auto& b) {
    return graph.pipes[a.front()].id < graph.pipes[b.front()].id;
  });
  if (chains.empty()) {
    result.error = "NotStageStructured: no sources (cycle?)";
    return result;
  }
  for (const auto& c : chains) used[c.front()] = true;

  size_t consumed = chains.size();
  while (true) {
    // Successor union of the current chain tails.
    std::set<int> union_succ;
    for (const auto& c : chains)
      for (int s : succ[c.back()]) union_succ.insert(s);

    if (union_succ.empty()) {
      stages.push_back(chains);
      break;
    }

    // The stage boundary is valid when tails x successors is complete bipartite.
    bool complete = true;
    for (const auto& c : chains) {
      if (succ[c.back()].size() != union_succ.size()) { complete = false; break; }
    }
    if (complete) {
      for (int h : union_succ) {
        const auto& p = pred[h];
        if (p.size() != chains.size()) { complete = false; break; }
        for (const auto& c : chains)
          if (std::find(p.begin(), p.end(), c.back()) == p.end()) {
            complete = false;
            break;
          }
        if (!complete) break;
      }
    }

    if (complete) {
      stages.push_back(chains);
      chains.clear();
      for (int h : union_succ) {
        if (used[h]) {
          result.error = "NotStageStructured: node reachable from two stages";
          return result;
        }
        used[h] = true;
        chains.push_back({h});
      }
      std::sort(chains.begin(), chains.end(), [&graph](const auto& a, const auto& b) {
        return graph.pipes[a.front()].id < graph.pipes[b.front()].id;
      });
      consumed += chains.size();
      continue;
    }

    // Otherwise grow chains through unique successor links and retry.
    bool extended = false;
    for (auto& c : chains) {
      int tail = c.back();
      if (succ[tail].size() != 1) continue;
      int next = succ[tail].front();
      if (pred[next].size() != 1 || used[next]) continue;
      c.push_back(next);
      used[next] = true;
      ++consumed;
      extended = true;
    }
    if (!extended) {
      result.error = "NotStageStructured: irregular fan pattern";
      return result;
    }
  }

  if (consumed != n) {
    result.error = "NotStageStructured: disconnected nodes";
    return result;
  }

  std::string text;
  if (graph.mode == CommMode::Fifo) text += "*";
  for (size_t s = 0; s < stages.size(); ++s) {
    if (s) text += " | ";
    for (size_t c = 0; c < stages[s].size(); ++c) {
      if (c) text += ", ";
      const auto& chain = stages[s][c];
      if (chain.size() > 1) {
        text += "(";
        for (size_t k = 0; k < chain.size(); ++k) {
          if (k) text += " | ";
          text += graph.pipes[chain[k]].id;
        }
        text += ")";
      } else {
        text += graph.pipes[chain.front()].id;
      }
    }
  }
  if (!graph.qos.best_effort) {
    text += " [";
    if (graph.mode == CommMode::Fifo)
      text += format_fraction(graph.qos.e2e_tput_per_s) + "/s";
    else
      text += format_fraction(graph.qos.loss_rate);
    text += ", " + std::to_string(graph.qos.e2e_delay_us) + "us]";
  }
  result.text = std::move(text);
  return result;
}

bool graphs_isomorphic(const PipelineGraph& a, const PipelineGraph& b) {
  if (a.mode != b.mode) return false;
  if (a.qos.best_effort != b.qos.best_effort) return false;
  if (!a.qos.best_effort) {
    if (a.qos.e2e_delay_us != b.qos.e2e_delay_us) return false;
    if (a.qos.e2e_tput_per_s != b.qos.e2e_tput_per_s) return false;
    if (a.qos.loss_rate != b.qos.loss_rate) return false;
  }
  auto names = [](const PipelineGraph& g) {
    std::set<std::string> s;
    for (const auto& p : g.pipes) s.insert(p.id);
    return s;
  };
  if (names(a) != names(b)) return false;
  auto edge_set = [](const PipelineGraph& g) {
    std::set<std::string> s;
    for (const auto& e : g.edges)
      s.insert(g.pipes[e.producer].id + ">" + g.pipes[e.consumer].id + ":" +
               to_string(e.buffer));
    return s;
  };
  return edge_set(a) == edge_set(b);
}

}  // namespace rtpipe
