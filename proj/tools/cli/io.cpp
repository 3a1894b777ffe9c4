#include "cli/io.hpp"

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace mexch::cli {

namespace {

using nlohmann::json;

const char* const kTrajectoryHeader = "replication,step,class,symbol,frequency";
const char* const kTaggedHeader = "replication,step,class,particle,state";
const char* const kReportHeader = "N,statistic,class_i,class_j,estimate,stderr,replications";

std::string join_sizes(const std::vector<std::size_t>& v) {
  std::string out;
  for (std::size_t k = 0; k < v.size(); ++k) out += (k ? "," : "") + std::to_string(v[k]);
  return out;
}

void write_preamble(std::ostream& out, const char* kind, const std::vector<TrajectoryRecord>& records) {
  if (records.empty()) throw std::invalid_argument("no records to write");
  const auto& first = records.front();
  out << "# mexch " << kind << " seed=" << first.seed << " sizes=" << join_sizes(first.class_sizes)
      << " replications=" << records.size() << " steps=" << first.steps.size() - 1 << '\n';
}

std::uint64_t parse_u64(const std::string& text, const std::string& what) {
  std::uint64_t v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw InputError("invalid " + what + ": '" + text + "'");
  }
  return v;
}

double parse_double(const std::string& text, const std::string& what) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size()) {
    throw InputError("invalid " + what + ": '" + text + "'");
  }
  return v;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

struct Preamble {
  std::uint64_t seed = 0;
  std::vector<std::size_t> sizes;
  std::size_t replications = 0;
  std::size_t steps = 0;

  bool operator==(const Preamble&) const = default;
};

struct CsvTable {
  Preamble preamble;
  std::vector<std::vector<std::string>> rows;
};

CsvTable read_table(std::istream& in, const std::string& kind, const char* header) {
  CsvTable table;
  std::string line;
  if (!std::getline(in, line) || !line.starts_with("# mexch " + kind + " ")) {
    throw InputError(kind + " CSV is missing its '# mexch " + kind + "' preamble");
  }
  bool seen_seed = false, seen_sizes = false, seen_reps = false, seen_steps = false;
  for (const auto& token : split(line.substr(9 + kind.size()), ' ')) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) continue;
    const auto key = token.substr(0, eq);
    const auto value = token.substr(eq + 1);
    if (key == "seed") {
      table.preamble.seed = parse_u64(value, "seed");
      seen_seed = true;
    } else if (key == "sizes") {
      for (const auto& s : split(value, ',')) table.preamble.sizes.push_back(parse_u64(s, "class size"));
      seen_sizes = true;
    } else if (key == "replications") {
      table.preamble.replications = parse_u64(value, "replications");
      seen_reps = true;
    } else if (key == "steps") {
      table.preamble.steps = parse_u64(value, "steps");
      seen_steps = true;
    }
  }
  if (!seen_seed || !seen_sizes || !seen_reps || !seen_steps || table.preamble.sizes.empty()) {
    throw InputError(kind + " CSV preamble is incomplete");
  }
  if (!std::getline(in, line) || line != header) throw InputError(kind + " CSV has an unexpected header");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto fields = split(line, ',');
    if (fields.size() != 5) throw InputError(kind + " CSV row has " + std::to_string(fields.size()) + " fields");
    table.rows.push_back(std::move(fields));
  }
  return table;
}

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json shape_to_json(const SystemShape& shape) {
  return json{{"class_sizes", shape.class_sizes()}, {"alphabets", shape.alphabets()}};
}

json law_to_json(const JointLaw& law) {
  json weights = json::array();
  for (const auto& [config, w] : law.weights()) {
    weights.push_back(json{{"config", config.classes}, {"p", to_string(w)}});
  }
  return json{{"shape", shape_to_json(law.shape())}, {"weights", std::move(weights)}};
}

ModelSpec model_from_json(const json& j) {
  if (!j.is_object()) throw InputError("model must be a JSON object");
  auto field = [&](const char* name) -> const json& {
    if (!j.contains(name)) throw InputError(std::string("model is missing field \"") + name + "\"");
    return j.at(name);
  };
  auto number_list = [&](const char* name, const json& v) {
    if (!v.is_array()) throw InputError(std::string("field \"") + name + "\" must be an array");
    std::vector<double> out;
    for (const auto& x : v) {
      if (!x.is_number()) throw InputError(std::string("field \"") + name + "\" must hold numbers");
      out.push_back(x.get<double>());
    }
    return out;
  };
  auto count = [&](const char* name) {
    const auto& v = field(name);
    if (!v.is_number_unsigned()) throw InputError(std::string("field \"") + name + "\" must be a non-negative integer");
    return v.get<std::size_t>();
  };

  ModelSpec m;
  m.classes = count("classes");
  m.a = number_list("a", field("a"));
  const auto& b = field("b");
  if (!b.is_array()) throw InputError("field \"b\" must be an array of arrays");
  for (const auto& row : b) m.b.push_back(number_list("b", row));
  m.rho = number_list("rho", field("rho"));
  m.q = number_list("q", field("q"));
  m.steps = count("steps");
  try {
    m.validate();
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("invalid model: ") + e.what());
  }
  return m;
}

json model_to_json(const ModelSpec& model) {
  return json{{"classes", model.classes}, {"a", model.a},     {"b", model.b},
              {"rho", model.rho},         {"q", model.q},     {"steps", model.steps}};
}

ModelSpec read_model_file(const std::filesystem::path& path) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw InputError("model file " + path.string() + " is not valid JSON: " + e.what());
  }
  return model_from_json(j);
}

std::string trajectory_file_name(std::size_t n) { return "trajectory_N" + std::to_string(n) + ".csv"; }
std::string tagged_file_name(std::size_t n) { return "tagged_N" + std::to_string(n) + ".csv"; }

void write_trajectory_csv(std::ostream& out, const std::vector<TrajectoryRecord>& records) {
  write_preamble(out, "trajectory", records);
  out << kTrajectoryHeader << '\n';
  for (const auto& rec : records) {
    for (std::size_t t = 0; t < rec.steps.size(); ++t) {
      const auto& freqs = rec.steps[t].freqs;
      for (std::size_t i = 0; i < freqs.size(); ++i) {
        for (std::size_t s = 0; s < freqs[i].size(); ++s) {
          out << rec.replication << ',' << t << ',' << i << ',' << s << ',' << format_double(freqs[i][s]) << '\n';
        }
      }
    }
  }
}

void write_tagged_csv(std::ostream& out, const std::vector<TrajectoryRecord>& records) {
  write_preamble(out, "tagged", records);
  out << kTaggedHeader << '\n';
  for (const auto& rec : records) {
    for (std::size_t t = 0; t < rec.steps.size(); ++t) {
      const auto& tagged = rec.steps[t].tagged;
      for (std::size_t i = 0; i < tagged.size(); ++i) {
        for (std::size_t n = 0; n < tagged[i].size(); ++n) {
          out << rec.replication << ',' << t << ',' << i << ',' << n << ',' << tagged[i][n] << '\n';
        }
      }
    }
  }
}

std::vector<TrajectoryRecord> read_records(std::istream& trajectory, std::istream& tagged) {
  const auto traj = read_table(trajectory, "trajectory", kTrajectoryHeader);
  const auto tags = read_table(tagged, "tagged", kTaggedHeader);
  if (!(traj.preamble == tags.preamble)) throw InputError("trajectory and tagged CSVs describe different runs");
  const auto& pre = traj.preamble;
  const auto classes = pre.sizes.size();
  const auto steps = pre.steps + 1;

  std::vector<TrajectoryRecord> records(pre.replications);
  for (std::size_t r = 0; r < records.size(); ++r) {
    records[r].seed = pre.seed;
    records[r].replication = r;
    records[r].class_sizes = pre.sizes;
    records[r].steps.resize(steps);
    for (auto& snap : records[r].steps) {
      snap.freqs.assign(classes, std::vector<double>(2, 0.0));
      snap.tagged.resize(classes);
    }
  }

  auto locate = [&](const std::vector<std::string>& row, std::size_t& r, std::size_t& t, std::size_t& i) {
    r = parse_u64(row[0], "replication");
    t = parse_u64(row[1], "step");
    i = parse_u64(row[2], "class");
    if (r >= pre.replications || t >= steps || i >= classes) throw InputError("CSV row index out of range");
  };

  if (traj.rows.size() != pre.replications * steps * classes * 2) {
    throw InputError("trajectory CSV has " + std::to_string(traj.rows.size()) + " rows, expected " +
                     std::to_string(pre.replications * steps * classes * 2));
  }
  std::vector<bool> filled(traj.rows.size(), false);
  for (const auto& row : traj.rows) {
    std::size_t r = 0, t = 0, i = 0;
    locate(row, r, t, i);
    const auto s = parse_u64(row[3], "symbol");
    if (s > 1) throw InputError("trajectory symbol out of range");
    const auto slot = ((r * steps + t) * classes + i) * 2 + s;
    if (filled[slot]) throw InputError("duplicate trajectory row");
    filled[slot] = true;
    records[r].steps[t].freqs[i][s] = parse_double(row[4], "frequency");
  }

  std::size_t tagged_count = 0;
  for (const auto& row : tags.rows) tagged_count = std::max<std::size_t>(tagged_count, parse_u64(row[3], "particle") + 1);
  if (tags.rows.size() != pre.replications * steps * classes * tagged_count) {
    throw InputError("tagged CSV is incomplete");
  }
  for (auto& rec : records) {
    for (auto& snap : rec.steps) {
      for (auto& t : snap.tagged) t.assign(tagged_count, State{2});
    }
  }
  for (const auto& row : tags.rows) {
    std::size_t r = 0, t = 0, i = 0;
    locate(row, r, t, i);
    const auto n = parse_u64(row[3], "particle");
    const auto state = parse_u64(row[4], "state");
    if (state > 1) throw InputError("tagged state out of range");
    auto& cell = records[r].steps[t].tagged[i][n];
    if (cell != 2) throw InputError("duplicate tagged row");
    cell = static_cast<State>(state);
  }
  return records;
}

void write_report_csv(std::ostream& out, const ChaosReport& report, std::uint64_t seed) {
  out << "# mexch report seed=" << seed << '\n' << kReportHeader << '\n';
  for (const auto& r : report.rows) {
    out << r.n << ',' << r.statistic << ',' << r.class_i << ',' << r.class_j << ',' << format_double(r.estimate)
        << ',' << format_double(r.std_error) << ',' << r.replications << '\n';
  }
}

json report_summary(const ChaosReport& report, const std::vector<Flag>& flags, std::uint64_t seed,
                    const std::string& model_kind) {
  json flag_list = json::array();
  bool all = true;
  for (const auto& f : flags) {
    flag_list.push_back(json{{"name", f.name}, {"passed", f.passed}, {"detail", f.detail}});
    all = all && f.passed;
  }
  return json{{"seed", seed},       {"model", model_kind}, {"sweep", report.sweep},
              {"flags", flag_list}, {"all_passed", all}};
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << content;
  if (!out) throw InputError("failed writing " + path.string());
}

}  // namespace mexch::cli
