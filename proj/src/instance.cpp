#include "daccbs/instance.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_set>

namespace daccbs {

MapfInstance::MapfInstance(Graph graph, std::vector<VertexId> starts, std::vector<VertexId> goals)
    : graph_(std::move(graph)), starts_(std::move(starts)), goals_(std::move(goals))
{
  if (starts_.size() != goals_.size()) throw InstanceError("start and goal counts differ");
  std::unordered_set<VertexId> seen_starts;
  std::unordered_set<VertexId> seen_goals;
  for (std::size_t a = 0; a < starts_.size(); ++a) {
    if (!graph_.valid(starts_[a]) || !graph_.valid(goals_[a]))
      throw InstanceError("agent " + std::to_string(a) + " has an invalid start or goal");
    if (!seen_starts.insert(starts_[a]).second)
      throw InstanceError("agent " + std::to_string(a) + " shares its start vertex");
    if (!seen_goals.insert(goals_[a]).second)
      throw InstanceError("agent " + std::to_string(a) + " shares its goal vertex");
  }
  gammas_.reserve(goals_.size());
  for (std::size_t a = 0; a < goals_.size(); ++a) {
    gammas_.push_back(goal_distance_field(graph_, goals_[a]));
    if (!is_finite(gammas_.back()[starts_[a]]))
      throw InstanceError("agent " + std::to_string(a) + " cannot reach its goal");
  }
}

Cost MapfInstance::gamma_sum(const std::vector<VertexId>& positions) const
{
  Cost sum = 0;
  for (std::size_t a = 0; a < positions.size(); ++a)
    sum = sat_add(sum, gammas_[a][positions[a]]);
  return sum;
}

namespace {

void strip_cr(std::string& line)
{
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

int parse_int(std::string_view token, int line_no, const char* what)
{
  int value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size())
    throw ParseError(line_no, std::string("expected integer ") + what + ", got '" + std::string(token) + "'");
  return value;
}

// "key value" header line
int header_value(const std::string& line, const std::string& key, int line_no)
{
  std::istringstream ss(line);
  std::string k, v, extra;
  if (!(ss >> k >> v) || k != key || (ss >> extra))
    throw ParseError(line_no, "expected '" + key + " <int>'");
  return parse_int(v, line_no, key.c_str());
}

bool passable_cell(char c, int line_no)
{
  switch (c) {
    case '.':
    case 'G':
    case 'S':
      return true;
    case '@':
    case 'O':
    case 'T':
    case 'W':
      return false;
    default:
      throw ParseError(line_no, std::string("unknown map cell '") + c + "'");
  }
}

}  // namespace

Graph parse_map(std::istream& text)
{
  std::string line;
  int line_no = 0;
  auto next = [&]() -> bool {
    if (!std::getline(text, line)) return false;
    ++line_no;
    strip_cr(line);
    return true;
  };

  if (!next() || line.rfind("type", 0) != 0) throw ParseError(line_no + 1, "expected 'type <name>'");
  if (!next()) throw ParseError(line_no + 1, "missing height");
  const int height = header_value(line, "height", line_no);
  if (!next()) throw ParseError(line_no + 1, "missing width");
  const int width = header_value(line, "width", line_no);
  if (height < 0 || width < 0) throw ParseError(line_no, "negative map dimension");
  if (!next() || line != "map") throw ParseError(line_no, "expected 'map'");

  std::vector<bool> passable(static_cast<std::size_t>(height) * width);
  for (int r = 0; r < height; ++r) {
    if (!next()) throw ParseError(line_no + 1, "missing map row " + std::to_string(r));
    if (static_cast<int>(line.size()) != width)
      throw ParseError(line_no, "row length " + std::to_string(line.size()) + " != width " +
                                    std::to_string(width));
    for (int c = 0; c < width; ++c) passable[r * width + c] = passable_cell(line[c], line_no);
  }
  return Graph::grid(height, width, passable);
}

Graph parse_map(const std::string& text)
{
  std::istringstream ss(text);
  return parse_map(ss);
}

Graph load_map(const std::string& path)
{
  std::ifstream in(path);
  if (!in) throw InstanceError("cannot open map file " + path);
  return parse_map(in);
}

MapfInstance parse_scenario(std::istream& text, const Graph& graph, std::size_t count)
{
  std::string line;
  int line_no = 1;
  if (!std::getline(text, line)) throw ParseError(1, "empty scenario");
  strip_cr(line);
  if (line != "version 1") throw ParseError(1, "expected 'version 1'");

  std::vector<VertexId> starts;
  std::vector<VertexId> goals;
  std::unordered_set<VertexId> seen_starts;
  std::unordered_set<VertexId> seen_goals;
  std::size_t row = 0;
  while (starts.size() < count && std::getline(text, line)) {
    ++line_no;
    strip_cr(line);
    if (line.empty()) continue;

    std::vector<std::string_view> fields;
    std::string_view rest(line);
    while (true) {
      const auto tab = rest.find('\t');
      fields.push_back(rest.substr(0, tab));
      if (tab == std::string_view::npos) break;
      rest.remove_prefix(tab + 1);
    }
    if (fields.size() != 9)
      throw ParseError(line_no, "expected 9 tab-separated fields, got " + std::to_string(fields.size()));

    const int w = parse_int(fields[2], line_no, "width");
    const int h = parse_int(fields[3], line_no, "height");
    if (w != graph.width() || h != graph.height())
      throw InstanceError("scenario row " + std::to_string(row) + ": dimensions " + std::to_string(w) +
                          "x" + std::to_string(h) + " disagree with map");
    auto vertex = [&](std::string_view xs, std::string_view ys) {
      const Cell cell{parse_int(ys, line_no, "y"), parse_int(xs, line_no, "x")};
      auto v = graph.vertex_at(cell);
      if (!v)
        throw InstanceError("scenario row " + std::to_string(row) + ": cell (" + std::to_string(cell.row) +
                            "," + std::to_string(cell.col) + ") is not passable");
      return *v;
    };
    const auto s = vertex(fields[4], fields[5]);
    const auto g = vertex(fields[6], fields[7]);
    if (!seen_starts.insert(s).second)
      throw InstanceError("scenario row " + std::to_string(row) + ": duplicate start");
    if (!seen_goals.insert(g).second)
      throw InstanceError("scenario row " + std::to_string(row) + ": duplicate goal");
    starts.push_back(s);
    goals.push_back(g);
    ++row;
  }
  if (starts.size() < count)
    throw InstanceError("scenario has " + std::to_string(starts.size()) + " rows, " + std::to_string(count) +
                        " requested");
  return MapfInstance(graph, std::move(starts), std::move(goals));
}

MapfInstance parse_scenario(const std::string& text, const Graph& graph, std::size_t count)
{
  std::istringstream ss(text);
  return parse_scenario(ss, graph, count);
}

MapfInstance load_scenario(const std::string& path, const Graph& graph, std::size_t count)
{
  std::ifstream in(path);
  if (!in) throw InstanceError("cannot open scenario file " + path);
  return parse_scenario(in, graph, count);
}

}  // namespace daccbs
