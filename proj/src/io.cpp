#include "gbd/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace gbd {

using ordered_json = nlohmann::ordered_json;

namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

const char* objective_name(ObjectiveKind kind) {
  switch (kind) {
    case ObjectiveKind::MaxMin:
      return "maxmin";
    case ObjectiveKind::SumRate:
      return "sumrate";
    case ObjectiveKind::WeightedSumRate:
      return "weighted";
  }
  return "maxmin";
}

ObjectiveKind objective_from_name(const std::string& name) {
  if (name == "maxmin") return ObjectiveKind::MaxMin;
  if (name == "sumrate") return ObjectiveKind::SumRate;
  if (name == "weighted") return ObjectiveKind::WeightedSumRate;
  throw Error("unknown objective kind: " + name);
}

const char* model_kind_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::LogisticRegression:
      return "logreg";
    case ModelKind::LinearSVM:
      return "svm";
    case ModelKind::ExtraTrees:
      return "extratrees";
    case ModelKind::LinearRegression:
      return "linear";
  }
  return "logreg";
}

ModelKind model_kind_from_name(const std::string& name) {
  if (name == "logreg") return ModelKind::LogisticRegression;
  if (name == "svm") return ModelKind::LinearSVM;
  if (name == "extratrees") return ModelKind::ExtraTrees;
  if (name == "linear") return ModelKind::LinearRegression;
  throw Error("unknown model kind: " + name);
}

ordered_json parse(const std::string& text) {
  ordered_json j = ordered_json::parse(text, nullptr, true);
  return j;
}

void check_schema(const ordered_json& j, const char* expected) {
  if (!j.contains("schema") || j["schema"] != expected) {
    throw Error(std::string("expected schema tag ") + expected);
  }
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

std::string d2d_to_json(const D2DInstance& inst) {
  ordered_json j;
  j["schema"] = kInstanceSchema;
  j["kind"] = "d2d";
  j["id"] = inst.id;
  j["seed"] = inst.seed;
  j["K"] = inst.K;
  j["L"] = inst.L;
  j["objective"] = objective_name(inst.objective);
  j["weights"] = inst.weights;
  j["sigma2"] = inst.sigma2;
  j["p_c_max"] = inst.p_c_max;
  j["p_d_max"] = inst.p_d_max;
  j["r_c_min"] = inst.r_c_min;
  j["cell_radius"] = inst.cell_radius;
  j["h_cb"] = inst.h_cb;
  j["h_db"] = inst.h_db;
  j["h_d"] = inst.h_d;
  j["h_cd"] = inst.h_cd;
  j["cu_x"] = inst.cu_x;
  j["cu_y"] = inst.cu_y;
  j["tx_x"] = inst.tx_x;
  j["tx_y"] = inst.tx_y;
  j["rx_x"] = inst.rx_x;
  j["rx_y"] = inst.rx_y;
  return j.dump(2) + "\n";
}

D2DInstance d2d_from_json(const std::string& text) {
  const ordered_json j = parse(text);
  check_schema(j, kInstanceSchema);
  if (j.at("kind") != "d2d") throw Error("instance kind is not d2d");
  D2DInstance inst;
  inst.id = j.at("id").get<std::string>();
  inst.seed = j.at("seed").get<std::uint64_t>();
  inst.K = j.at("K").get<int>();
  inst.L = j.at("L").get<int>();
  inst.objective = objective_from_name(j.at("objective").get<std::string>());
  inst.weights = j.at("weights").get<std::vector<double>>();
  inst.sigma2 = j.at("sigma2").get<double>();
  inst.p_c_max = j.at("p_c_max").get<double>();
  inst.p_d_max = j.at("p_d_max").get<double>();
  inst.r_c_min = j.at("r_c_min").get<double>();
  inst.cell_radius = j.at("cell_radius").get<double>();
  inst.h_cb = j.at("h_cb").get<std::vector<double>>();
  inst.h_db = j.at("h_db").get<std::vector<double>>();
  inst.h_d = j.at("h_d").get<std::vector<double>>();
  inst.h_cd = j.at("h_cd").get<std::vector<double>>();
  inst.cu_x = j.at("cu_x").get<std::vector<double>>();
  inst.cu_y = j.at("cu_y").get<std::vector<double>>();
  inst.tx_x = j.at("tx_x").get<std::vector<double>>();
  inst.tx_y = j.at("tx_y").get<std::vector<double>>();
  inst.rx_x = j.at("rx_x").get<std::vector<double>>();
  inst.rx_y = j.at("rx_y").get<std::vector<double>>();
  return inst;
}

std::string synthetic_to_json(const SyntheticInstance& inst) {
  ordered_json j;
  j["schema"] = kInstanceSchema;
  j["kind"] = "synthetic";
  j["id"] = inst.id;
  j["seed"] = inst.seed;
  j["n1"] = inst.n1;
  j["n2"] = inst.n2;
  j["quad_weight"] = inst.quad_weight;
  j["lin_y"] = inst.lin_y;
  j["objective_offset"] = inst.objective_offset;
  j["x_max"] = inst.x_max;
  ordered_json rows = ordered_json::array();
  for (const SyntheticRow& row : inst.rows) {
    ordered_json r;
    r["x_coeff"] = row.x_coeff;
    r["y_coeff"] = row.y_coeff;
    r["constant"] = row.constant;
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  return j.dump(2) + "\n";
}

SyntheticInstance synthetic_from_json(const std::string& text) {
  const ordered_json j = parse(text);
  check_schema(j, kInstanceSchema);
  if (j.at("kind") != "synthetic") throw Error("instance kind is not synthetic");
  SyntheticInstance inst;
  inst.id = j.at("id").get<std::string>();
  inst.seed = j.at("seed").get<std::uint64_t>();
  inst.n1 = j.at("n1").get<int>();
  inst.n2 = j.at("n2").get<int>();
  inst.quad_weight = j.at("quad_weight").get<std::vector<double>>();
  inst.lin_y = j.at("lin_y").get<std::vector<double>>();
  inst.objective_offset = j.at("objective_offset").get<double>();
  inst.x_max = j.at("x_max").get<double>();
  for (const auto& r : j.at("rows")) {
    SyntheticRow row;
    row.x_coeff = r.at("x_coeff").get<std::vector<double>>();
    row.y_coeff = r.at("y_coeff").get<std::vector<double>>();
    row.constant = r.at("constant").get<double>();
    inst.rows.push_back(std::move(row));
  }
  return inst;
}

std::unique_ptr<Problem> problem_from_json(const std::string& text) {
  const ordered_json j = parse(text);
  check_schema(j, kInstanceSchema);
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "d2d") return std::make_unique<D2DProblem>(d2d_from_json(text));
  if (kind == "synthetic")
    return std::make_unique<SyntheticProblem>(synthetic_from_json(text));
  throw Error("unknown instance kind: " + kind);
}

std::string model_to_json(const TrainedModel& model) {
  ordered_json j;
  j["schema"] = kModelSchema;
  j["kind"] = model_kind_name(model.kind);
  j["feature_schema"] = model.schema_version;
  j["training_seed"] = model.training_seed;
  j["converged"] = model.converged;
  j["perfect_fit"] = model.perfect_fit;
  j["feature_mean"] = model.feature_mean;
  j["feature_std"] = model.feature_std;
  j["weights"] = model.weights;
  j["bias"] = model.bias;
  j["decision_threshold"] = model.decision_threshold;
  ordered_json trees = ordered_json::array();
  for (const Tree& tree : model.trees) {
    ordered_json nodes = ordered_json::array();
    for (const TreeNode& n : tree.nodes) {
      nodes.push_back({n.feature, n.threshold, n.left, n.right, n.value});
    }
    trees.push_back(std::move(nodes));
  }
  j["trees"] = std::move(trees);
  return j.dump() + "\n";
}

TrainedModel model_from_json(const std::string& text) {
  const ordered_json j = parse(text);
  check_schema(j, kModelSchema);
  TrainedModel model;
  model.kind = model_kind_from_name(j.at("kind").get<std::string>());
  model.schema_version = j.at("feature_schema").get<int>();
  model.training_seed = j.at("training_seed").get<std::uint64_t>();
  model.converged = j.at("converged").get<bool>();
  model.perfect_fit = j.at("perfect_fit").get<bool>();
  model.feature_mean = j.at("feature_mean").get<std::vector<double>>();
  model.feature_std = j.at("feature_std").get<std::vector<double>>();
  model.weights = j.at("weights").get<std::vector<double>>();
  model.bias = j.at("bias").get<double>();
  model.decision_threshold = j.at("decision_threshold").get<double>();
  for (const auto& tj : j.at("trees")) {
    Tree tree;
    for (const auto& nj : tj) {
      TreeNode n;
      n.feature = nj.at(0).get<int>();
      n.threshold = nj.at(1).get<double>();
      n.left = nj.at(2).get<int>();
      n.right = nj.at(3).get<int>();
      n.value = nj.at(4).get<double>();
      tree.nodes.push_back(n);
    }
    model.trees.push_back(std::move(tree));
  }
  return model;
}

std::string dataset_to_csv(const CutDataset& dataset) {
  std::ostringstream out;
  out << "indicator,violation,repeat,depth,order,label,run_id,iteration,s,"
         "schema_version\n";
  for (const CutRecord& r : dataset.records) {
    const auto f = r.features.as_array();
    out << format_double(f[0]) << ',' << format_double(f[1]) << ','
        << format_double(f[2]) << ',' << format_double(f[3]) << ','
        << format_double(f[4]) << ',' << format_double(r.label) << ','
        << r.run_id << ',' << r.iteration << ',' << r.order << ','
        << r.features.schema_version << '\n';
  }
  return out.str();
}

CutDataset dataset_from_csv(const std::string& text) {
  CutDataset dataset;
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw Error("empty dataset file");
  const std::string expected =
      "indicator,violation,repeat,depth,order,label,run_id,iteration,s,"
      "schema_version";
  if (line != expected) throw Error("unexpected dataset header: " + line);
  bool classifier = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cols = split(line, ',');
    if (cols.size() != 10) throw Error("malformed dataset row: " + line);
    CutRecord r;
    r.features.optimality_indicator = std::stod(cols[0]);
    r.features.violation = std::stod(cols[1]);
    r.features.repeat = std::stod(cols[2]);
    r.features.depth = std::stod(cols[3]);
    r.features.order = std::stod(cols[4]);
    r.label = std::stod(cols[5]);
    r.run_id = cols[6];
    r.iteration = std::stoi(cols[7]);
    r.order = std::stoi(cols[8]);
    r.features.schema_version = std::stoi(cols[9]);
    if (r.features.schema_version != kFeatureSchemaVersion) {
      throw ModelMismatchError("dataset feature schema version mismatch");
    }
    if (r.label != 0.0 && r.label != 1.0) classifier = false;
    dataset.records.push_back(std::move(r));
  }
  dataset.kind = classifier ? DatasetKind::Classifier : DatasetKind::Regressor;
  return dataset;
}

std::string cutlog_to_csv(const CutLog& log) {
  std::ostringstream out;
  out << "kind,iteration,order,repeat,violation,kept,judged,gen_eta,gen_y,"
         "const_term,coeff\n";
  for (const CutLogEntry& e : log.entries) {
    out << (e.cut.kind == CutKind::Optimality ? "O" : "F") << ','
        << e.cut.gen_iteration << ',' << e.cut.gen_order << ','
        << e.cut.repeat_count << ',' << format_double(e.cut.violation) << ','
        << (e.kept ? 1 : 0) << ',' << (e.judged_useful ? 1 : 0) << ','
        << format_double(e.gen_eta) << ',' << binary_to_string(e.cut.gen_y)
        << ',' << format_double(e.cut.const_term) << ',';
    for (std::size_t j = 0; j < e.cut.coeff_y.size(); ++j) {
      if (j) out << ';';
      out << format_double(e.cut.coeff_y[j]);
    }
    out << '\n';
  }
  return out.str();
}

std::string trace_to_csv(const BoundsTrace& trace) {
  std::ostringstream out;
  out << "iteration,ubd,lbd\n";
  for (std::size_t i = 0; i < trace.ubd.size(); ++i) {
    out << (i + 1) << ',' << format_double(trace.ubd[i]) << ','
        << format_double(trace.lbd[i]) << '\n';
  }
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << content;
}

}  // namespace gbd
