#include "evenif/io.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "evenif/errors.hpp"

namespace evenif {

namespace {

constexpr std::size_t kMaxFeatureCount = 1'000'000;
constexpr std::size_t kMaxLayerCells = 10'000'000;

struct Token {
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;

  std::size_t end_column() const { return column + text.size(); }
};

struct SourceLine {
  std::vector<Token> tokens;
};

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v';
}

/// Splits the input into significant lines of whitespace-separated tokens.
/// '#' starts a comment to end of line; blank lines disappear.
std::vector<SourceLine> tokenize(std::string_view text) {
  std::vector<SourceLine> lines;
  std::size_t line_no = 1;
  std::size_t i = 0;
  while (i <= text.size()) {
    SourceLine current;
    std::size_t col = 1;
    while (i < text.size() && text[i] != '\n') {
      if (text[i] == '#') {
        while (i < text.size() && text[i] != '\n') ++i;
        break;
      }
      if (is_space(text[i])) {
        ++i;
        ++col;
        continue;
      }
      Token tok;
      tok.line = line_no;
      tok.column = col;
      while (i < text.size() && !is_space(text[i]) && text[i] != '\n' &&
             text[i] != '#') {
        tok.text.push_back(text[i]);
        ++i;
        ++col;
      }
      current.tokens.push_back(std::move(tok));
    }
    if (!current.tokens.empty()) lines.push_back(std::move(current));
    if (i >= text.size()) break;
    ++i;  // consume '\n'
    ++line_no;
  }
  return lines;
}

class LineCursor {
 public:
  explicit LineCursor(std::vector<SourceLine> lines)
      : lines_(std::move(lines)) {}

  bool done() const { return next_ >= lines_.size(); }

  const SourceLine& take(const std::string& expected) {
    if (done()) {
      throw ParseError(last_line_ + 1, 1, "unexpected end of input", expected);
    }
    const SourceLine& line = lines_[next_++];
    last_line_ = line.tokens.front().line;
    return line;
  }

  void expect_done(const std::string& context) {
    if (!done()) {
      const Token& t = lines_[next_].tokens.front();
      throw ParseError(t.line, t.column, "unexpected extra line after " +
                                             context,
                       "end of input");
    }
  }

 private:
  std::vector<SourceLine> lines_;
  std::size_t next_ = 0;
  std::size_t last_line_ = 0;
};

[[noreturn]] void fail(const Token& at, std::string message,
                       std::string expected = "") {
  throw ParseError(at.line, at.column, std::move(message),
                   std::move(expected));
}

void expect_token_count(const SourceLine& line, std::size_t count,
                        const std::string& shape) {
  if (line.tokens.size() == count) return;
  if (line.tokens.size() > count) {
    fail(line.tokens[count], "unexpected token '" +
                                 line.tokens[count].text + "'",
         shape);
  }
  const Token& last = line.tokens.back();
  throw ParseError(last.line, last.end_column(), "line is too short", shape);
}

void expect_keyword(const Token& t, const std::string& keyword) {
  if (t.text != keyword) {
    fail(t, "unexpected token '" + t.text + "'", "keyword '" + keyword + "'");
  }
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isdigit(c) != 0;
  });
}

std::size_t parse_count(const Token& t, std::size_t min, std::size_t max,
                        const std::string& what) {
  if (!all_digits(t.text) || t.text.size() > 12) {
    fail(t, "'" + t.text + "' is not a valid " + what, "positive integer");
  }
  const unsigned long long value = std::stoull(t.text);
  if (value < min || value > max) {
    fail(t, what + " " + t.text + " is outside [" + std::to_string(min) +
                ", " + std::to_string(max) + "]");
  }
  return static_cast<std::size_t>(value);
}

/// Rational literal: "p", "-p" or "p/q" with q a positive integer and the
/// sign allowed on the numerator only.
Rational parse_rational(const Token& t) {
  std::string_view s = t.text;
  const char* expected = "rational ('p', '-p' or 'p/q')";
  std::string_view num = s;
  std::string_view den = "1";
  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    num = s.substr(0, slash);
    den = s.substr(slash + 1);
  }
  std::string_view num_digits = num;
  if (!num_digits.empty() && num_digits.front() == '-') {
    num_digits.remove_prefix(1);
  }
  if (!all_digits(num_digits) || !all_digits(den)) {
    fail(t, "'" + t.text + "' is not a valid rational", expected);
  }
  mpz_class d(std::string(den), 10);
  if (d == 0) {
    fail(t, "rational '" + t.text + "' has a zero denominator", expected);
  }
  return Rational(mpz_class(std::string(num), 10), std::move(d));
}

bool is_identifier(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isalnum(c) != 0;
  });
}

std::size_t parse_feature_count(LineCursor& cursor) {
  const SourceLine& line = cursor.take("'n <count>'");
  expect_token_count(line, 2, "'n <count>'");
  expect_keyword(line.tokens[0], "n");
  return parse_count(line.tokens[1], 1, kMaxFeatureCount, "feature count");
}

Model parse_perceptron(LineCursor& cursor) {
  Perceptron model;
  const std::size_t n = parse_feature_count(cursor);

  const SourceLine& weights = cursor.take("'w <rational> ...'");
  expect_keyword(weights.tokens[0], "w");
  if (weights.tokens.size() != n + 1) {
    const Token& anchor = weights.tokens.size() > n + 1
                              ? weights.tokens[n + 1]
                              : weights.tokens.back();
    throw ParseError(anchor.line, anchor.end_column(),
                     std::to_string(weights.tokens.size() - 1) +
                         " weights where " + std::to_string(n) +
                         " expected");
  }
  model.weights.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) {
    model.weights.push_back(parse_rational(weights.tokens[i]));
  }

  const SourceLine& bias = cursor.take("'b <rational>'");
  expect_token_count(bias, 2, "'b <rational>'");
  expect_keyword(bias.tokens[0], "b");
  model.bias = parse_rational(bias.tokens[1]);

  cursor.expect_done("the perceptron description");
  return model;
}

Model parse_fbdd(LineCursor& cursor) {
  Fbdd model;
  model.n = parse_feature_count(cursor);

  const SourceLine& root = cursor.take("'root <id>'");
  expect_token_count(root, 2, "'root <id>'");
  expect_keyword(root.tokens[0], "root");
  if (!is_identifier(root.tokens[1].text)) {
    fail(root.tokens[1], "'" + root.tokens[1].text +
                             "' is not a valid node identifier",
         "alphanumeric identifier");
  }
  const Token root_token = root.tokens[1];

  std::map<std::string, int> index_of;
  std::vector<std::string> structural;  // violations the node table cannot hold
  const auto node_index = [&](const Token& t) {
    if (!is_identifier(t.text)) {
      fail(t, "'" + t.text + "' is not a valid node identifier",
           "alphanumeric identifier");
    }
    const auto [it, inserted] =
        index_of.emplace(t.text, static_cast<int>(model.nodes.size()));
    if (inserted) {
      model.nodes.emplace_back();
      model.nodes.back().feature = -2;  // referenced but not defined yet
      model.names.push_back(t.text);
    }
    return it->second;
  };

  while (!cursor.done()) {
    const SourceLine& line = cursor.take("'node', 'leaf' or 'edge'");
    const Token& kw = line.tokens[0];
    if (kw.text == "node") {
      expect_token_count(line, 3, "'node <id> <feature>'");
      const int id = node_index(line.tokens[1]);
      if (model.nodes[id].feature != -2) {
        fail(line.tokens[1], "node '" + line.tokens[1].text +
                                 "' is defined twice");
      }
      model.nodes[id].feature = static_cast<int>(
          parse_count(line.tokens[2], 1, kMaxFeatureCount, "feature index") -
          1);
    } else if (kw.text == "leaf") {
      expect_token_count(line, 3, "'leaf <id> <0|1>'");
      const int id = node_index(line.tokens[1]);
      if (model.nodes[id].feature != -2) {
        fail(line.tokens[1],
             "node '" + line.tokens[1].text + "' is defined twice");
      }
      if (line.tokens[2].text != "0" && line.tokens[2].text != "1") {
        fail(line.tokens[2], "leaf class must be 0 or 1", "'0' or '1'");
      }
      model.nodes[id].feature = -1;
      model.nodes[id].leaf_value = line.tokens[2].text[0] - '0';
    } else if (kw.text == "edge") {
      expect_token_count(line, 4, "'edge <from> <0|1> <to>'");
      if (line.tokens[2].text != "0" && line.tokens[2].text != "1") {
        fail(line.tokens[2], "edge label must be 0 or 1", "'0' or '1'");
      }
      const int from = node_index(line.tokens[1]);
      const int label = line.tokens[2].text[0] - '0';
      const int to = node_index(line.tokens[3]);
      if (model.nodes[from].edge[label] >= 0) {
        structural.push_back("node " + line.tokens[1].text + " has two " +
                             std::to_string(label) + "-edges");
      } else {
        model.nodes[from].edge[label] = to;
      }
    } else {
      fail(kw, "unexpected token '" + kw.text + "'",
           "'node', 'leaf' or 'edge'");
    }
  }

  const auto root_it = index_of.find(root_token.text);
  if (root_it == index_of.end()) {
    fail(root_token, "root node '" + root_token.text + "' is never defined");
  }
  model.root = root_it->second;

  for (std::size_t u = 0; u < model.nodes.size(); ++u) {
    if (model.nodes[u].feature == -2) {
      structural.push_back("node " + model.names[u] +
                           " is referenced but never defined");
      model.nodes[u].feature = -1;
    } else if (model.nodes[u].is_leaf() &&
               (model.nodes[u].edge[0] >= 0 || model.nodes[u].edge[1] >= 0)) {
      structural.push_back("leaf " + model.names[u] +
                           " has an outgoing edge");
    }
  }

  auto violations = validate_fbdd(model);
  structural.insert(structural.end(), violations.begin(), violations.end());
  if (!structural.empty()) {
    throw ValidationError("fbdd", std::move(structural));
  }
  return model;
}

Model parse_mlp(LineCursor& cursor) {
  Mlp model;
  model.n = parse_feature_count(cursor);

  const SourceLine& layers = cursor.take("'layers <count>'");
  expect_token_count(layers, 2, "'layers <count>'");
  expect_keyword(layers.tokens[0], "layers");
  const std::size_t layer_count =
      parse_count(layers.tokens[1], 1, 1000, "layer count");

  for (std::size_t l = 0; l < layer_count; ++l) {
    const SourceLine& header = cursor.take("'layer <in> <out>'");
    expect_token_count(header, 3, "'layer <in> <out>'");
    expect_keyword(header.tokens[0], "layer");
    const std::size_t in_dim =
        parse_count(header.tokens[1], 1, kMaxLayerCells, "layer width");
    const std::size_t out_dim =
        parse_count(header.tokens[2], 1, kMaxLayerCells, "layer width");
    if (in_dim * out_dim > kMaxLayerCells) {
      fail(header.tokens[1], "layer of " + std::to_string(in_dim) + "x" +
                                 std::to_string(out_dim) +
                                 " weights is too large");
    }
    MlpLayer layer;
    layer.weights.reserve(in_dim);
    for (std::size_t r = 0; r < in_dim; ++r) {
      const SourceLine& row =
          cursor.take("a row of " + std::to_string(out_dim) + " rationals");
      expect_token_count(row, out_dim,
                         "a row of " + std::to_string(out_dim) +
                             " rationals");
      std::vector<Rational> entries;
      entries.reserve(out_dim);
      for (const Token& t : row.tokens) entries.push_back(parse_rational(t));
      layer.weights.push_back(std::move(entries));
    }
    const SourceLine& bias = cursor.take("'bias <rational> ...'");
    expect_keyword(bias.tokens[0], "bias");
    expect_token_count(bias, out_dim + 1,
                       "'bias' followed by " + std::to_string(out_dim) +
                           " rationals");
    layer.biases.reserve(out_dim);
    for (std::size_t i = 1; i <= out_dim; ++i) {
      layer.biases.push_back(parse_rational(bias.tokens[i]));
    }
    model.layers.push_back(std::move(layer));
  }
  cursor.expect_done("the mlp description");

  auto violations = validate_mlp(model);
  if (!violations.empty()) {
    throw ValidationError("mlp", std::move(violations));
  }
  return model;
}

}  // namespace

Model parse_model(std::string_view text) {
  LineCursor cursor(tokenize(text));
  const SourceLine& head =
      cursor.take("a model kind ('perceptron', 'fbdd' or 'mlp')");
  expect_token_count(head, 1, "a model kind on its own line");
  const Token& kind = head.tokens[0];
  if (kind.text == "perceptron") return parse_perceptron(cursor);
  if (kind.text == "fbdd") return parse_fbdd(cursor);
  if (kind.text == "mlp") return parse_mlp(cursor);
  fail(kind, "unknown model kind '" + kind.text + "'",
       "'perceptron', 'fbdd' or 'mlp'");
}

std::string serialize_model(const Model& model) {
  std::ostringstream out;
  if (const auto* p = std::get_if<Perceptron>(&model)) {
    out << "perceptron\n";
    out << "n " << p->feature_count() << "\n";
    out << "w";
    for (const Rational& w : p->weights) out << " " << w.str();
    out << "\n";
    out << "b " << p->bias.str() << "\n";
  } else if (const auto* f = std::get_if<Fbdd>(&model)) {
    out << "fbdd\n";
    out << "n " << f->n << "\n";
    out << "root " << f->name_of(f->root) << "\n";
    for (std::size_t u = 0; u < f->nodes.size(); ++u) {
      const Fbdd::Node& node = f->nodes[u];
      if (node.is_leaf()) {
        out << "leaf " << f->name_of(static_cast<int>(u)) << " "
            << node.leaf_value << "\n";
      } else {
        out << "node " << f->name_of(static_cast<int>(u)) << " "
            << node.feature + 1 << "\n";
      }
    }
    for (std::size_t u = 0; u < f->nodes.size(); ++u) {
      const Fbdd::Node& node = f->nodes[u];
      if (node.is_leaf()) continue;
      for (int label = 0; label <= 1; ++label) {
        out << "edge " << f->name_of(static_cast<int>(u)) << " " << label
            << " " << f->name_of(node.edge[label]) << "\n";
      }
    }
  } else {
    const Mlp& m = std::get<Mlp>(model);
    out << "mlp\n";
    out << "n " << m.n << "\n";
    out << "layers " << m.layers.size() << "\n";
    for (const MlpLayer& layer : m.layers) {
      out << "layer " << layer.in_dim() << " " << layer.out_dim() << "\n";
      for (const auto& row : layer.weights) {
        for (std::size_t j = 0; j < row.size(); ++j) {
          out << (j ? " " : "") << row[j].str();
        }
        out << "\n";
      }
      out << "bias";
      for (const Rational& b : layer.biases) out << " " << b.str();
      out << "\n";
    }
  }
  return out.str();
}

Instance parse_instance(std::string_view text, std::size_t n) {
  std::size_t begin = 0;
  std::size_t end = text.size();
  while (begin < end && (is_space(text[begin]) || text[begin] == '\n')) {
    ++begin;
  }
  while (end > begin && (is_space(text[end - 1]) || text[end - 1] == '\n')) {
    --end;
  }
  std::vector<std::uint8_t> bits;
  bits.reserve(end - begin);
  for (std::size_t i = begin; i < end; ++i) {
    const char c = text[i];
    if (c != '0' && c != '1') {
      throw ParseError(1, i + 1, std::string("'") + c +
                                     "' is not a bit",
                       "'0' or '1'");
    }
    bits.push_back(c - '0');
  }
  if (bits.size() != n) {
    throw ParseError(1, 1, "instance has " + std::to_string(bits.size()) +
                               " bits, expected " + std::to_string(n));
  }
  return Instance(std::move(bits));
}

std::string serialize_instance(const Instance& x) { return x.str(); }

namespace {

struct RuleToken {
  enum class Kind { literal, head_sep, body_marker, body_sep };
  Kind kind;
  Literal literal;  // for Kind::literal
  std::size_t column;
};

std::vector<RuleToken> lex_rule(const SourceLine& line, std::size_t n) {
  std::vector<RuleToken> out;
  for (const Token& t : line.tokens) {
    const std::string& s = t.text;
    std::size_t i = 0;
    while (i < s.size()) {
      const std::size_t col = t.column + i;
      if (s[i] == '>') {
        out.push_back({RuleToken::Kind::head_sep, {}, col});
        ++i;
      } else if (s.compare(i, 2, "<-") == 0) {
        out.push_back({RuleToken::Kind::body_marker, {}, col});
        i += 2;
      } else if (s[i] == '&') {
        out.push_back({RuleToken::Kind::body_sep, {}, col});
        ++i;
      } else if (s[i] == '!' || s[i] == 'f') {
        const bool positive = s[i] != '!';
        std::size_t j = i + (positive ? 0 : 1);
        if (j >= s.size() || s[j] != 'f') {
          throw ParseError(t.line, col, "expected a literal",
                           "'f<index>' or '!f<index>'");
        }
        ++j;
        std::size_t digits = 0;
        while (j + digits < s.size() &&
               std::isdigit(static_cast<unsigned char>(s[j + digits]))) {
          ++digits;
        }
        if (digits == 0 || digits > 9) {
          throw ParseError(t.line, col, "expected a literal",
                           "'f<index>' or '!f<index>'");
        }
        const long index = std::stol(s.substr(j, digits));
        if (index < 1 || static_cast<std::size_t>(index) > n) {
          throw IndexOutOfRangeError(t.line, col,
                                     "feature f" + std::to_string(index) +
                                         " is outside [1, " +
                                         std::to_string(n) + "]");
        }
        out.push_back({RuleToken::Kind::literal,
                       Literal{static_cast<int>(index - 1), positive}, col});
        i = j + digits;
      } else {
        throw ParseError(t.line, col, "unexpected character '" +
                                          std::string(1, s[i]) + "'",
                         "literal or separator");
      }
    }
  }
  return out;
}

}  // namespace

std::vector<PreferenceRule> parse_preferences(std::string_view text,
                                              std::size_t n) {
  std::vector<PreferenceRule> rules;
  for (const SourceLine& line : tokenize(text)) {
    const std::size_t line_no = line.tokens.front().line;
    const std::vector<RuleToken> toks = lex_rule(line, n);
    PreferenceRule rule;
    bool in_body = false;
    bool expect_literal = true;
    for (const RuleToken& t : toks) {
      switch (t.kind) {
        case RuleToken::Kind::literal:
          if (!expect_literal) {
            throw ParseError(line_no, t.column, "two literals in a row",
                             "'>', '<-' or '&'");
          }
          (in_body ? rule.body : rule.head).push_back(t.literal);
          expect_literal = false;
          break;
        case RuleToken::Kind::head_sep:
          if (expect_literal || in_body) {
            throw ParseError(line_no, t.column, "misplaced '>'", "literal");
          }
          expect_literal = true;
          break;
        case RuleToken::Kind::body_marker:
          if (expect_literal || in_body) {
            throw ParseError(line_no, t.column, "misplaced '<-'", "literal");
          }
          in_body = true;
          expect_literal = true;
          break;
        case RuleToken::Kind::body_sep:
          if (expect_literal || !in_body) {
            throw ParseError(line_no, t.column, "misplaced '&'", "literal");
          }
          expect_literal = true;
          break;
      }
    }
    if (rule.head.empty() || expect_literal) {
      throw ParseError(line_no, 1, "incomplete preference rule",
                       "head literals, optionally '<- body'");
    }
    for (std::size_t i = 0; i < rule.head.size(); ++i) {
      for (std::size_t j = i + 1; j < rule.head.size(); ++j) {
        if (rule.head[i] == rule.head[j]) {
          throw DuplicateHeadLiteralError(
              line_no, 1,
              "literal " + std::string(rule.head[i].positive ? "" : "!") +
                  "f" + std::to_string(rule.head[i].feature + 1) +
                  " appears twice in the head");
        }
      }
    }
    rules.push_back(std::move(rule));
  }
  return rules;
}

std::string serialize_preferences(const std::vector<PreferenceRule>& rules) {
  std::ostringstream out;
  const auto emit = [&](const Literal& phi) {
    if (!phi.positive) out << "!";
    out << "f" << phi.feature + 1;
  };
  for (const PreferenceRule& rule : rules) {
    for (std::size_t i = 0; i < rule.head.size(); ++i) {
      if (i) out << " > ";
      emit(rule.head[i]);
    }
    if (!rule.body.empty()) {
      out << " <- ";
      for (std::size_t i = 0; i < rule.body.size(); ++i) {
        if (i) out << " & ";
        emit(rule.body[i]);
      }
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace evenif
