#include "pdl/problem.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "pdl/parser.hpp"

namespace pdl {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

ProblemFile parse_problem(std::string_view text, const std::string& file) {
  enum class Section { None, Goal, Assume, Abox };
  ProblemFile problem;
  Section section = Section::None;
  std::size_t line_no = 0;
  std::size_t goal_line = 0, abox_line = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const std::string_view item = trim(line);
    if (item.empty()) continue;
    const std::size_t indent = static_cast<std::size_t>(item.data() - raw.data());
    if (item == "goal:") {
      section = Section::Goal;
      goal_line = goal_line ? goal_line : line_no;
      continue;
    }
    if (item == "assume:") {
      section = Section::Assume;
      continue;
    }
    if (item == "abox:") {
      section = Section::Abox;
      abox_line = abox_line ? abox_line : line_no;
      continue;
    }
    try {
      switch (section) {
        case Section::None:
          throw ParseError("expected a section header 'goal:', 'assume:' or 'abox:'", 1, 1);
        case Section::Goal:
          problem.formulas.push_back(parse_formula(item));
          break;
        case Section::Assume:
          problem.assumptions.push_back(parse_formula(item));
          break;
        case Section::Abox:
          problem.assertions.push_back(parse_assertion(item));
          break;
      }
    } catch (const ParseError& e) {
      throw ParseError(e.message(), line_no, indent + e.column(), file);
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), line_no, indent + 1, file);
    }
  }
  if (goal_line && abox_line)
    throw ParseError("a problem has either a 'goal:' or an 'abox:' section, not both", std::max(goal_line, abox_line),
                     1, file);
  return problem;
}

ProblemFile load_problem(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file", 0, 0, path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_problem(text.str(), path.string());
}

}  // namespace pdl
