#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "oml/error.hpp"
#include "oml/measure.hpp"
#include "oml/text.hpp"

namespace oml {

void write_atoms(std::ostream& os, const AtomicMeasure& measure, const Eigen::VectorXd* values) {
  if (values && values->size() != measure.size()) throw ConfigError("write_atoms: value count mismatch");
  os << measure.dim() << ' ' << measure.size() << ' ' << format_real(measure.ahlfors_n()) << '\n';
  for (Eigen::Index a = 0; a < measure.size(); ++a) {
    for (int i = 0; i < measure.dim(); ++i) os << format_real(measure.point(a)[i]) << ' ';
    os << format_real(measure.masses()[a]);
    if (values) os << ' ' << format_real((*values)[a]);
    os << '\n';
  }
}

void write_atoms(std::ostream& os, const MuFunction& f) { write_atoms(os, f.measure(), &f.values()); }

namespace {

struct Token {
  std::string text;
  int column;
};

std::vector<Token> tokenize(const std::string& line) {
  std::vector<Token> out;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == ',' || line[i] == '\r')) ++i;
    if (i >= line.size()) break;
    size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != ',' && line[i] != '\r') ++i;
    out.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return out;
}

double number(const Token& tok, int line) {
  auto v = try_parse_real(tok.text);
  if (!v) throw ParseError(line, tok.column, "expected a number, got '" + tok.text + "'");
  return *v;
}

}  // namespace

AtomFile read_atoms(std::istream& is) {
  std::string line;
  int line_no = 0;
  std::vector<Token> header;
  while (header.empty() && std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line[0] == '#') continue;
    header = tokenize(line);
  }
  if (header.size() != 3) throw ParseError(line_no, 1, "header must be 'd n_atoms ahlfors_n'");
  const double d_raw = number(header[0], line_no);
  const double n_raw = number(header[1], line_no);
  const double ahlfors = number(header[2], line_no);
  if (d_raw < 1 || d_raw != static_cast<int>(d_raw)) throw ParseError(line_no, header[0].column, "bad dimension");
  if (n_raw < 1 || n_raw != static_cast<double>(static_cast<long long>(n_raw)))
    throw ParseError(line_no, header[1].column, "bad atom count");
  const int d = static_cast<int>(d_raw);
  const auto n = static_cast<Eigen::Index>(n_raw);

  Eigen::MatrixXd pts(d, n);
  Eigen::VectorXd masses(n);
  Eigen::VectorXd values(n);
  int columns = -1;
  Eigen::Index read = 0;
  while (read < n && std::getline(is, line)) {
    ++line_no;
    auto toks = tokenize(line);
    if (toks.empty() || toks[0].text[0] == '#') continue;
    const int got = static_cast<int>(toks.size());
    if (got != d + 1 && got != d + 2)
      throw ParseError(line_no, 1, "expected " + std::to_string(d + 1) + " or " + std::to_string(d + 2) + " columns");
    if (columns < 0) columns = got;
    if (got != columns) throw ParseError(line_no, 1, "inconsistent column count");
    for (int i = 0; i < d; ++i) pts(i, read) = number(toks[static_cast<size_t>(i)], line_no);
    masses[read] = number(toks[static_cast<size_t>(d)], line_no);
    if (!(masses[read] > 0.0)) throw ParseError(line_no, toks[static_cast<size_t>(d)].column, "mass must be positive");
    if (got == d + 2) values[read] = number(toks[static_cast<size_t>(d + 1)], line_no);
    ++read;
  }
  if (read != n) throw ParseError(line_no + 1, 1, "expected " + std::to_string(n) + " atoms, found " + std::to_string(read));

  AtomicMeasure measure(pts, masses, ahlfors);
  AtomFile out{measure, std::nullopt};
  if (columns == d + 2) {
    Eigen::VectorXd sorted(n);
    for (Eigen::Index i = 0; i < n; ++i) sorted[i] = values[measure.order()[static_cast<size_t>(i)]];
    out.values = std::move(sorted);
  }
  return out;
}

}  // namespace oml
