// Acceptance run: one line per criterion, from a single `reproduce all`.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "pcforge/reproduce.hpp"

using namespace pcforge;

namespace {

  bool starts_with(std::string const& s, std::string const& p) {
    return s.rfind(p, 0) == 0;
  }

  bool ends_with(std::string const& s, std::string const& p) {
    return s.size() >= p.size() && s.compare(s.size() - p.size(), p.size(), p) == 0;
  }

  struct Criterion {
    int                                     id;
    std::string                             name;
    double                                  budget;  // seconds
    std::function<bool(std::string const&)> owns;
    std::size_t                             min_lines;  // guards against a silently empty group
  };

}  // namespace

int main() {
  std::vector<Criterion> const criteria{
      {1, "Catanese baseline C_n x C_n", 1, [](auto& s) { return starts_with(s, "catanese."); }, 6},
      {2, "free group p=5 present", 30, [](auto& s) { return starts_with(s, "thmA.free.p5."); }, 4},
      {3, "free group p=2,3 absent", 120,
       [](auto& s) { return starts_with(s, "thmA.") && ends_with(s, ".absent"); }, 5},
      {4, "Hall-Petrescu congruences", 60, [](auto& s) { return starts_with(s, "lemma2.2."); }, 20},
      {5, "power subgroups of maximal subgroups", 10,
       [](auto& s) { return starts_with(s, "lemma2.3.") || starts_with(s, "lemma2.4."); }, 7},
      {6, "free product p=5", 60, [](auto& s) { return starts_with(s, "thm3.2."); }, 3},
      {7, "free product p=3 (i)", 120,
       [](auto& s) {
         return (starts_with(s, "thm3.4.") && !starts_with(s, "thm3.4.ii.")) || starts_with(s, "lemma3.3.");
       },
       9},
      {8, "free product p=3 (ii) chain", 300, [](auto& s) { return starts_with(s, "thm3.4.ii."); }, 2},
      {9, "maximal class", 60, [](auto& s) { return starts_with(s, "maxclass."); }, 5},
      {10, "Easterfield bound", 120, [](auto& s) { return starts_with(s, "easterfield."); }, 20},
      {11, "Nottingham", 60, [](auto& s) { return starts_with(s, "nottingham."); }, 6},
      {12, "non-isomorphism with Nottingham quotients", 300,
       [](auto& s) { return starts_with(s, "thm3.5."); }, 4},
      {13, "infrastructure", 1200, [](auto& s) { return starts_with(s, "infra."); }, 4},
  };

  auto const t0 = std::chrono::steady_clock::now();
  Report     r  = reproduce("all");
  double const total =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  std::vector<bool> claimed(r.lines.size(), false);
  bool              all_ok = true;
  for (auto const& c : criteria) {
    std::size_t n = 0, fails = 0;
    double      secs = 0;
    std::string first_fail;
    for (std::size_t i = 0; i < r.lines.size(); ++i) {
      auto const& l = r.lines[i];
      if (!c.owns(l.id)) {
        continue;
      }
      claimed[i] = true;
      ++n;
      secs += l.seconds;
      if (l.status != CheckStatus::pass) {
        ++fails;
        if (first_fail.empty()) {
          first_fail = l.id + ": " + l.detail;
        }
      }
    }
    // the last criterion also covers the whole run
    double const timed = c.id == 13 ? total : secs;
    bool const   ok    = fails == 0 && n >= c.min_lines && timed < c.budget;
    all_ok             = all_ok && ok;
    char buf[160];
    std::snprintf(buf, sizeof buf, "criterion %d: %s (%.2fs < %.0fs) %zu checks", c.id,
                  ok ? "PASS" : "FAIL", timed, c.budget, n);
    std::cout << buf << ", " << c.name;
    if (fails > 0) {
      std::cout << "; " << first_fail;
    } else if (n < c.min_lines) {
      std::cout << "; expected at least " << c.min_lines << " checks";
    } else if (timed >= c.budget) {
      std::cout << "; over budget";
    }
    std::cout << '\n';
  }
  std::size_t extra = 0;
  for (std::size_t i = 0; i < r.lines.size(); ++i) {
    if (!claimed[i]) {
      ++extra;
      all_ok = all_ok && r.lines[i].status != CheckStatus::fail;
    }
  }
  std::cout << "other checks: " << extra << ", total " << r.lines.size() << " checks in " << total
            << "s\n";
  return all_ok ? 0 : 1;
}
