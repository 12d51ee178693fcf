#include <algorithm>
#include <sstream>

#include "reeb/preq_homology.hpp"

namespace reeb {

namespace {

// Poincare polynomial product (sum_a t^{sa a}, a <= na) * (sum_b t^{sb b}, b <= nb).
BaseManifold product_base(int n, std::int64_t sa, std::int64_t na, std::int64_t sb,
                          std::int64_t nb, std::int64_t chern) {
  BaseManifold base;
  base.n = n;
  base.betti.assign(2 * static_cast<std::size_t>(n) + 1, 0);
  for (std::int64_t a = 0; a <= na; ++a) {
    for (std::int64_t b = 0; b <= nb; ++b) ++base.betti.at(sa * a + sb * b);
  }
  base.chern_min = chern;
  return base;
}

// Complex quadric of complex dimension k; two middle classes when k is even.
BaseManifold quadric(int k) {
  BaseManifold base = complex_projective(k);
  if (k % 2 == 0) base.betti[k] = 2;
  base.chern_min = k;
  return base;
}

BaseManifold sphere_base(std::int64_t m) {
  return m == 2 ? complex_projective(1) : quadric(static_cast<int>(m - 1));
}

BaseManifold cp_base(std::int64_t m) {
  return product_base(static_cast<int>(2 * m - 1), 2, m, 2, m - 1, m);
}

BaseManifold hp_base(std::int64_t m) {
  return product_base(static_cast<int>(4 * m - 1), 4, m, 2, 2 * m - 1, 2 * m + 1);
}

BaseManifold cap_base(std::int64_t) { return product_base(15, 8, 2, 2, 7, 11); }

std::vector<CrossFamily> build_rank_table() {
  std::vector<CrossFamily> t;
  t.push_back({"S^{2n+1}", "sphere", "n", "n+1", "n+1", [](std::int64_t n) { return n >= 1; },
               [](std::int64_t n) { return complex_projective(static_cast<int>(n)); },
               [](std::int64_t n) { return n + 1; }, [](std::int64_t n) { return n + 1; }});
  t.push_back({"S*S^2 or S*RP^2", "S*S", "", "2", "2", [](std::int64_t m) { return m == 2; },
               sphere_base, [](std::int64_t) { return std::int64_t{2}; },
               [](std::int64_t) { return std::int64_t{2}; }});
  t.push_back({"S*S^m or S*RP^m, m>2 even", "S*S", "m", "m", "m-1",
               [](std::int64_t m) { return m > 2 && m % 2 == 0; }, sphere_base,
               [](std::int64_t m) { return m; }, [](std::int64_t m) { return m - 1; }});
  t.push_back({"S*S^m or S*RP^m, m odd", "S*S", "m", "m+1", "m-1",
               [](std::int64_t m) { return m >= 3 && m % 2 == 1; }, sphere_base,
               [](std::int64_t m) { return m + 1; }, [](std::int64_t m) { return m - 1; }});
  t.push_back({"S*CP^m", "S*CP", "m", "m(m+1)", "m", [](std::int64_t m) { return m >= 2; },
               cp_base, [](std::int64_t m) { return m * (m + 1); },
               [](std::int64_t m) { return m; }});
  t.push_back({"S*HP^m", "S*HP", "m", "2m(m+1)", "2m+1", [](std::int64_t m) { return m >= 1; },
               hp_base, [](std::int64_t m) { return 2 * m * (m + 1); },
               [](std::int64_t m) { return 2 * m + 1; }});
  t.push_back({"S*CaP^2", "S*CaP", "", "24", "11", [](std::int64_t m) { return m == 2; },
               cap_base, [](std::int64_t) { return std::int64_t{24}; },
               [](std::int64_t) { return std::int64_t{11}; }});
  return t;
}

std::vector<CrossFamily> build_nonhyp_table() {
  const std::function<std::int64_t(std::int64_t)> none;
  std::vector<CrossFamily> t;
  t.push_back({"S^{2n+1}, n even", "sphere", "n", "n", "",
               [](std::int64_t n) { return n >= 2 && n % 2 == 0; },
               [](std::int64_t n) { return complex_projective(static_cast<int>(n)); },
               [](std::int64_t n) { return n; }, none});
  t.push_back({"S^{2n+1}, n odd", "sphere", "n", "n+1", "",
               [](std::int64_t n) { return n >= 1 && n % 2 == 1; },
               [](std::int64_t n) { return complex_projective(static_cast<int>(n)); },
               [](std::int64_t n) { return n + 1; }, none});
  t.push_back({"S*S^m or S*RP^m, m even", "S*S", "m", "m", "",
               [](std::int64_t m) { return m >= 2 && m % 2 == 0; }, sphere_base,
               [](std::int64_t m) { return m; }, none});
  t.push_back({"S*S^m or S*RP^m, m odd", "S*S", "m", "m-1", "",
               [](std::int64_t m) { return m >= 3 && m % 2 == 1; }, sphere_base,
               [](std::int64_t m) { return m - 1; }, none});
  t.push_back({"S*CP^m", "S*CP", "m", "m(m+1)", "", [](std::int64_t m) { return m >= 2; },
               cp_base, [](std::int64_t m) { return m * (m + 1); }, none});
  t.push_back({"S*HP^m", "S*HP", "m", "2m(m+1)", "", [](std::int64_t m) { return m >= 1; },
               hp_base, [](std::int64_t m) { return 2 * m * (m + 1); }, none});
  t.push_back({"S*CaP^2", "S*CaP", "", "24", "", [](std::int64_t m) { return m == 2; },
               cap_base, [](std::int64_t) { return std::int64_t{24}; }, none});
  return t;
}

std::string pad(const std::string& s, std::size_t width) {
  return s + std::string(width > s.size() ? width - s.size() : 0, ' ');
}

std::string render_table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(rows.front().size(), 0);
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  std::ostringstream out;
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      line += c + 1 == row.size() ? row[c] : pad(row[c], width[c] + 2);
    }
    out << line << '\n';
  }
  return out.str();
}

}  // namespace

const std::vector<CrossFamily>& cross_rank_table() {
  static const std::vector<CrossFamily> table = build_rank_table();
  return table;
}

const std::vector<CrossFamily>& cross_nonhyp_table() {
  static const std::vector<CrossFamily> table = build_nonhyp_table();
  return table;
}

std::vector<CrossEntry> cross_catalog(std::int64_t max_param) {
  std::vector<CrossEntry> out;
  for (const CrossFamily& row : cross_rank_table()) {
    for (std::int64_t p = 1; p <= std::max<std::int64_t>(max_param, 2); ++p) {
      if (!row.admissible(p)) continue;
      CrossEntry e;
      e.name = row.parameter.empty() ? row.name
                                     : row.name + " [" + row.parameter + "=" + std::to_string(p) + "]";
      e.base = row.base(p);
      e.r_B = row.value(p);
      e.c_B = row.chern(p);
      for (const CrossFamily& other : cross_nonhyp_table()) {
        if (other.manifold == row.manifold && other.admissible(p)) e.r_nonhyp = other.value(p);
      }
      out.push_back(std::move(e));
    }
  }
  return out;
}

std::string render_catalog_text() {
  std::vector<std::vector<std::string>> first{{"Prequantization", "r_B", "c_B"}};
  for (const CrossFamily& row : cross_rank_table()) {
    first.push_back({row.name, row.r_formula, row.c_formula});
  }
  std::vector<std::vector<std::string>> second{{"Prequantization", "r_nonhyp"}};
  for (const CrossFamily& row : cross_nonhyp_table()) {
    second.push_back({row.name, row.r_formula});
  }
  return render_table(first) + "\n" + render_table(second);
}

std::string render_catalog_machine() {
  std::ostringstream out;
  int index = 0;
  for (const CrossFamily& row : cross_rank_table()) {
    out << "table=rank\nrow=" << ++index << "\nname=" << row.name
        << "\nr_B=" << row.r_formula << "\nc_B=" << row.c_formula << "\n\n";
  }
  index = 0;
  for (const CrossFamily& row : cross_nonhyp_table()) {
    out << "table=nonhyp\nrow=" << ++index << "\nname=" << row.name
        << "\nr_nonhyp=" << row.r_formula << "\n\n";
  }
  std::string text = out.str();
  text.pop_back();  // no blank line after the last record
  return text;
}

}  // namespace reeb
