#include "sw/chain_complex.hpp"

#include <fstream>
#include <sstream>
#include <utility>

#include "sw/errors.hpp"

namespace sw::homology {

namespace {

struct Token {
  std::string text;
  int line, col;
};

// '#' comments out the rest of the line; tokens are whitespace-separated
std::vector<Token> tokenize(std::istream& in) {
  std::vector<Token> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    size_t i = 0;
    while (i < line.size()) {
      if (std::isspace(static_cast<unsigned char>(line[i]))) {
        ++i;
        continue;
      }
      const size_t start = i;
      while (i < line.size() &&
             !std::isspace(static_cast<unsigned char>(line[i])))
        ++i;
      out.push_back({line.substr(start, i - start), lineno, int(start) + 1});
    }
  }
  return out;
}

class Cursor {
 public:
  explicit Cursor(std::vector<Token> toks) : toks_(std::move(toks)) {}

  bool done() const { return pos_ >= toks_.size(); }

  const Token& peek() const {
    if (done()) throw ParseError("unexpected end of input", last_line(), 1);
    return toks_[pos_];
  }

  Token next() {
    const Token t = peek();
    ++pos_;
    return t;
  }

  Int next_int() {
    const Token t = next();
    const std::string& s = t.text;
    const size_t first = (s.size() > 1 && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    bool ok = s.size() > first;
    for (size_t i = first; i < s.size() && ok; ++i)
      ok = std::isdigit(static_cast<unsigned char>(s[i])) != 0;
    if (!ok)
      throw ParseError("expected an integer, got '" + s + "'", t.line, t.col);
    return Int(s);
  }

  int next_small_int(const char* what) {
    const Token t = peek();
    const Int v = next_int();
    if (v < 0 || v > 1'000'000)
      throw ParseError(std::string(what) + " out of range: " + t.text, t.line,
                       t.col);
    return int(v);
  }

  int last_line() const {
    return toks_.empty() ? 1 : toks_.back().line;
  }

 private:
  std::vector<Token> toks_;
  size_t pos_ = 0;
};

}  // namespace

ChainComplex::ChainComplex(std::string name, bool manifold,
                           std::vector<int> ranks, std::vector<IMat> boundaries,
                           std::vector<NamedCochain> classes)
    : name_(std::move(name)),
      manifold_(manifold),
      ranks_(std::move(ranks)),
      boundaries_(std::move(boundaries)),
      classes_(std::move(classes)) {
  validate();
}

int ChainComplex::rank(int k) const {
  if (k < 0 || k > dim()) return 0;
  return ranks_[k];
}

const IMat& ChainComplex::boundary(int k) const {
  if (k < 1 || k > dim())
    throw std::out_of_range("boundary degree out of range");
  return boundaries_[k];
}

IMat ChainComplex::coboundary(int k) const {
  if (k < 0 || k >= dim()) return IMat(rank(k + 1), rank(k));
  return boundaries_[k + 1].transpose();
}

const NamedCochain* ChainComplex::find_class(const std::string& name) const {
  for (const auto& c : classes_)
    if (c.name == name) return &c;
  return nullptr;
}

void ChainComplex::validate() const {
  if (ranks_.empty()) throw ConfigError("complex has no degrees");
  for (int k = 0; k <= dim(); ++k)
    if (ranks_[k] < 0) throw ConfigError("negative rank");
  if (int(boundaries_.size()) != dim() + 1)
    throw ConfigError("boundary list size mismatch");
  for (int k = 1; k <= dim(); ++k) {
    const IMat& b = boundaries_[k];
    if (b.rows() != ranks_[k - 1] || b.cols() != ranks_[k]) {
      std::ostringstream os;
      os << "boundary " << k << " must be " << ranks_[k - 1] << "x"
         << ranks_[k] << ", got " << b.rows() << "x" << b.cols();
      throw ConfigError(os.str());
    }
  }
  for (int k = 2; k <= dim(); ++k) {
    const IMat comp = boundaries_[k - 1] * boundaries_[k];
    for (int r = 0; r < comp.rows(); ++r)
      for (int c = 0; c < comp.cols(); ++c)
        if (comp(r, c) != 0) {
          std::ostringstream os;
          os << "complex '" << name_ << "': boundary composition at degree "
             << k << " is nonzero at entry (" << r << "," << c
             << ") = " << comp(r, c);
          throw ConfigError(os.str());
        }
  }
  for (const auto& cls : classes_) {
    if (cls.degree < 0 || cls.degree > dim())
      throw ConfigError("class '" + cls.name + "' has degree out of range");
    if (int(cls.coeffs.size()) != ranks_[cls.degree])
      throw ConfigError("class '" + cls.name + "' has wrong length");
  }
}

ChainComplex parse_chain_complex(std::istream& in) {
  Cursor cur(tokenize(in));

  Token head = cur.next();
  if (head.text != "complex")
    throw ParseError("expected 'complex', got '" + head.text + "'", head.line,
                     head.col);
  const std::string name = cur.next().text;

  bool manifold = false;
  std::vector<int> ranks;
  std::vector<IMat> boundaries;
  std::vector<NamedCochain> classes;
  bool saw_end = false;

  while (!cur.done()) {
    const Token kw = cur.next();
    if (kw.text == "end") {
      saw_end = true;
      break;
    } else if (kw.text == "manifold") {
      const Token v = cur.next();
      if (v.text == "true")
        manifold = true;
      else if (v.text == "false")
        manifold = false;
      else
        throw ParseError("manifold must be true or false, got '" + v.text +
                             "'",
                         v.line, v.col);
    } else if (kw.text == "ranks") {
      if (!ranks.empty())
        throw ParseError("duplicate ranks line", kw.line, kw.col);
      // ranks run to the next keyword; at least one is required
      while (!cur.done()) {
        const Token& t = cur.peek();
        if (t.text == "boundary" || t.text == "class" || t.text == "end" ||
            t.text == "manifold")
          break;
        ranks.push_back(cur.next_small_int("rank"));
      }
      if (ranks.empty())
        throw ParseError("ranks line is empty", kw.line, kw.col);
      boundaries.assign(ranks.size(), IMat());
      for (size_t k = 1; k < ranks.size(); ++k)
        boundaries[k] = IMat(ranks[k - 1], ranks[k]);
    } else if (kw.text == "boundary") {
      if (ranks.empty())
        throw ParseError("boundary before ranks", kw.line, kw.col);
      const int k = cur.next_small_int("boundary degree");
      if (k < 1 || k >= int(ranks.size()))
        throw ParseError("boundary degree out of range", kw.line, kw.col);
      IMat m(ranks[k - 1], ranks[k]);
      for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c) m(r, c) = cur.next_int();
      boundaries[k] = std::move(m);
    } else if (kw.text == "class") {
      if (ranks.empty())
        throw ParseError("class before ranks", kw.line, kw.col);
      NamedCochain cls;
      cls.name = cur.next().text;
      cls.degree = cur.next_small_int("class degree");
      if (cls.degree >= int(ranks.size()))
        throw ParseError("class degree out of range", kw.line, kw.col);
      cls.coeffs.resize(ranks[cls.degree]);
      for (auto& x : cls.coeffs) x = cur.next_int();
      classes.push_back(std::move(cls));
    } else {
      throw ParseError("unknown keyword '" + kw.text + "'", kw.line, kw.col);
    }
  }
  if (!saw_end)
    throw ParseError("missing 'end'", cur.last_line(), 1);
  if (!cur.done()) {
    const Token t = cur.next();
    throw ParseError("trailing content after 'end'", t.line, t.col);
  }
  if (ranks.empty()) throw ParseError("missing ranks line", head.line, 1);

  return ChainComplex(name, manifold, std::move(ranks), std::move(boundaries),
                      std::move(classes));
}

ChainComplex parse_chain_complex(const std::string& text) {
  std::istringstream in(text);
  return parse_chain_complex(in);
}

ChainComplex load_chain_complex(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open chain-complex file: " + path);
  return parse_chain_complex(in);
}

std::string serialize(const ChainComplex& c) {
  std::ostringstream os;
  os << "complex " << c.name() << "\n";
  os << "manifold " << (c.manifold() ? "true" : "false") << "\n";
  os << "ranks";
  for (int k = 0; k <= c.dim(); ++k) os << " " << c.rank(k);
  os << "\n";
  for (int k = 1; k <= c.dim(); ++k) {
    const IMat& b = c.boundary(k);
    bool zero = true;
    for (int r = 0; r < b.rows() && zero; ++r)
      for (int col = 0; col < b.cols() && zero; ++col)
        if (b(r, col) != 0) zero = false;
    if (zero) continue;
    os << "boundary " << k << "\n";
    for (int r = 0; r < b.rows(); ++r) {
      for (int col = 0; col < b.cols(); ++col)
        os << (col ? " " : "") << b(r, col);
      os << "\n";
    }
  }
  for (const auto& cls : c.classes()) {
    os << "class " << cls.name << " " << cls.degree << "\n";
    for (size_t i = 0; i < cls.coeffs.size(); ++i)
      os << (i ? " " : "") << cls.coeffs[i];
    if (!cls.coeffs.empty()) os << "\n";
  }
  os << "end\n";
  return os.str();
}

}  // namespace sw::homology
