#include "matlog/dot.hpp"

#include <sstream>

namespace matlog {

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

/// Cover edges of the definable order: a < b with nothing strictly between.
std::vector<std::pair<int, int>> cover_edges(const std::vector<std::vector<bool>>& leq) {
  const int n = static_cast<int>(leq.size());
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (a == b || !leq[a][b]) continue;
      bool cover = true;
      for (int c = 0; c < n && cover; ++c)
        if (c != a && c != b && leq[a][c] && leq[c][b]) cover = false;
      if (cover) out.emplace_back(a, b);
    }
  return out;
}

std::string render(const std::vector<std::string>& labels,
                   const std::vector<std::pair<int, int>>& covers) {
  std::ostringstream out;
  out << "digraph hasse {\n  rankdir=BT;\n  node [shape=plaintext];\n";
  for (std::size_t i = 0; i < labels.size(); ++i)
    out << "  n" << i << " [label=" << quote(labels[i]) << "];\n";
  for (const auto& [a, b] : covers)
    out << "  n" << a << " -> n" << b << " [arrowhead=none];\n";
  out << "}\n";
  return out.str();
}

}  // namespace

std::string hasse_dot(const finite_algebra& a, const std::vector<std::string>& labels) {
  const int n = a.size();
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      int args[2] = {x, y};
      leq[x][y] = a.apply("∧", args) == x;
    }
  std::vector<std::string> names = labels.empty() ? a.elements() : labels;
  return render(names, cover_edges(leq));
}

std::string hasse_dot(const quotient_algebra& q) {
  std::vector<std::string> labels;
  for (int i = 0; i < q.size(); ++i) {
    std::string label = print(q.representatives[i]);
    if (i == q.unit) label = "1 = [" + label + "]";
    else if (i == q.zero) label = "0 = [" + label + "]";
    else label = "[" + label + "]";
    labels.push_back(std::move(label));
  }
  return hasse_dot(q.algebra, labels);
}

std::string hasse_dot(const rn_lattice_result& lattice) {
  const int n = lattice.size();
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n));
  for (int i = 0; i < n; ++i) leq[i][i] = true;
  for (const auto& [a, b] : lattice.order) leq[a][b] = true;
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i)
    labels.push_back(lattice.keys[i] + " = " + print(lattice.representatives[i]));
  return render(labels, cover_edges(leq));
}

std::string model_dot(const kripke_model& m, int marked_world) {
  std::ostringstream out;
  out << "digraph model {\n  rankdir=BT;\n";
  for (int w = 0; w < m.frame.n; ++w) {
    std::string held;
    for (const auto& [var, ext] : m.extension)
      if ((ext >> w) & 1) held += (held.empty() ? "" : ",") + var;
    out << "  w" << w << " [label=" << quote("w" + std::to_string(w) +
                                             (held.empty() ? "" : " ⊩ " + held))
        << (w == marked_world ? ", shape=box" : "") << "];\n";
  }
  for (const auto& [a, b] : m.frame.covers())
    out << "  w" << a << " -> w" << b << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace matlog
