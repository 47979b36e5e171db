#include "smmi/dataset.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "smmi/errors.hpp"
#include "smmi/mi_monte_carlo.hpp"
#include "smmi/parallel.hpp"
#include "smmi/rng.hpp"

namespace smmi {

std::string to_string(Split split) {
  switch (split) {
    case Split::Train: return "train";
    case Split::Val: return "val";
    case Split::Test: return "test";
  }
  throw std::invalid_argument("unknown split");
}

Split parse_split(const std::string& name) {
  if (name == "train") return Split::Train;
  if (name == "val") return Split::Val;
  if (name == "test") return Split::Test;
  throw DataError("unknown split tag: " + name);
}

ChannelRealization DatasetRow::channel() const {
  return {h, db_to_linear(gamma_db)};
}

std::vector<const DatasetRow*> LabeledDataset::split_rows(Split split) const {
  std::vector<const DatasetRow*> out;
  for (const auto& r : rows)
    if (r.split == split) out.push_back(&r);
  return out;
}

Eigen::MatrixXd LabeledDataset::targets_of(Split split) const {
  const auto selected = split_rows(split);
  Eigen::MatrixXd t(selected.size(), header.constellations.size());
  for (std::size_t i = 0; i < selected.size(); ++i)
    for (std::size_t k = 0; k < selected[i]->targets.size(); ++k)
      t(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
          selected[i]->targets[k];
  return t;
}

namespace {

// %.17g round-trips doubles exactly through strtod, which is what makes
// write -> read -> write byte-stable.
std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

nlohmann::ordered_json header_json(const DatasetHeader& h) {
  nlohmann::ordered_json j;
  j["format"] = "smmi-dataset";
  j["version"] = h.generator_version;
  j["nt"] = h.nt;
  nlohmann::ordered_json consts = nlohmann::ordered_json::array();
  for (auto kind : h.constellations) consts.push_back(to_string(kind));
  j["constellations"] = consts;
  j["n_noise_draws"] = h.n_noise_draws;
  j["snr_db_range"] = {h.snr_lo_db, h.snr_hi_db};
  j["split_fractions"] = h.split_fractions;
  j["seed"] = h.seed;
  j["n_rows"] = h.n_rows;
  return j;
}

DatasetHeader header_from_json(const nlohmann::json& j) {
  DatasetHeader h;
  if (j.value("format", "") != "smmi-dataset")
    throw DataError("not a dataset file header");
  h.generator_version = j.at("version");
  if (h.generator_version != 1) throw DataError("unsupported dataset version");
  h.nt = j.at("nt");
  for (const auto& name : j.at("constellations"))
    h.constellations.push_back(parse_constellation(name));
  h.n_noise_draws = j.at("n_noise_draws");
  h.snr_lo_db = j.at("snr_db_range")[0];
  h.snr_hi_db = j.at("snr_db_range")[1];
  h.split_fractions = j.at("split_fractions").get<std::vector<double>>();
  h.seed = j.at("seed");
  h.n_rows = j.at("n_rows");
  return h;
}

void write_row(std::ostream& out, const DatasetRow& row) {
  out << row.row_id << ',' << row.seed << ',' << fmt_double(row.gamma_db) << ','
      << to_string(row.split);
  for (Eigen::Index r = 0; r < row.h.rows(); ++r)
    for (Eigen::Index c = 0; c < row.h.cols(); ++c)
      out << ',' << fmt_double(row.h(r, c).real()) << ','
          << fmt_double(row.h(r, c).imag());
  for (double t : row.targets) out << ',' << fmt_double(t);
  out << '\n';
}

DatasetRow parse_row(const std::string& line, int nt, std::size_t n_targets,
                     std::size_t line_no) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, ',')) fields.push_back(item);
  const std::size_t expected = 4 + 2 * static_cast<std::size_t>(nt) * nt + n_targets;
  if (fields.size() != expected)
    throw DataError("dataset line " + std::to_string(line_no) + ": expected " +
                    std::to_string(expected) + " fields, got " +
                    std::to_string(fields.size()));
  DatasetRow row;
  std::size_t at = 0;
  try {
    row.row_id = std::stoull(fields[at++]);
    row.seed = std::stoull(fields[at++]);
    row.gamma_db = std::stod(fields[at++]);
    row.split = parse_split(fields[at++]);
    row.h.resize(nt, nt);
    for (int r = 0; r < nt; ++r)
      for (int c = 0; c < nt; ++c) {
        const double re = std::stod(fields[at++]);
        const double im = std::stod(fields[at++]);
        row.h(r, c) = {re, im};
      }
    row.targets.resize(n_targets);
    for (std::size_t k = 0; k < n_targets; ++k) row.targets[k] = std::stod(fields[at++]);
  } catch (const std::invalid_argument&) {
    throw DataError("dataset line " + std::to_string(line_no) + ": bad numeric field");
  } catch (const std::out_of_range&) {
    throw DataError("dataset line " + std::to_string(line_no) + ": field out of range");
  }
  return row;
}

Split split_for_row(std::uint64_t row_id, std::uint64_t n_rows,
                    const std::vector<double>& fractions) {
  const auto n_train = static_cast<std::uint64_t>(
      std::llround(fractions[0] * static_cast<double>(n_rows)));
  const auto n_val = static_cast<std::uint64_t>(
      std::llround(fractions[1] * static_cast<double>(n_rows)));
  if (row_id < n_train) return Split::Train;
  if (row_id < n_train + n_val) return Split::Val;
  return Split::Test;
}

DatasetRow generate_row(const DatasetHeader& header, std::uint64_t row_id) {
  DatasetRow row;
  row.row_id = row_id;
  row.seed = derive_seed(header.seed, row_id);
  row.h = sample_rayleigh_h(derive_seed(row.seed, 0), header.nt);
  row.gamma_db = sample_snr_db(derive_seed(row.seed, 1), header.snr_lo_db, header.snr_hi_db);
  row.split = split_for_row(row_id, header.n_rows, header.split_fractions);
  const ChannelRealization channel{row.h, db_to_linear(row.gamma_db)};
  row.targets.resize(header.constellations.size());
  for (std::size_t k = 0; k < header.constellations.size(); ++k) {
    const auto c = make_constellation(header.constellations[k]);
    row.targets[k] =
        mi_finite(channel, c, header.n_noise_draws, derive_seed(row.seed, 2 + k)).value;
  }
  return row;
}

}  // namespace

void save_dataset(const LabeledDataset& dataset, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open dataset file for writing: " + path);
  out << '#' << header_json(dataset.header).dump() << '\n';
  for (const auto& row : dataset.rows) write_row(out, row);
  if (!out) throw DataError("failed writing dataset file: " + path);
}

LabeledDataset load_dataset(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open dataset file: " + path);
  std::string line;
  if (!std::getline(in, line) || line.empty() || line[0] != '#')
    throw DataError("dataset file missing '#' header line: " + path);
  LabeledDataset ds;
  try {
    ds.header = header_from_json(nlohmann::json::parse(line.substr(1)));
  } catch (const nlohmann::json::exception& e) {
    throw DataError("malformed dataset header in " + path + ": " + e.what());
  }
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    ds.rows.push_back(
        parse_row(line, ds.header.nt, ds.header.constellations.size(), line_no));
  }
  if (ds.rows.size() != ds.header.n_rows)
    throw DataError(path + ": header declares " + std::to_string(ds.header.n_rows) +
                    " rows, file has " + std::to_string(ds.rows.size()));
  for (std::size_t i = 0; i < ds.rows.size(); ++i)
    if (ds.rows[i].row_id != i) throw DataError(path + ": row_id sequence broken");
  return ds;
}

LabeledDataset gen_dataset(const GenOptions& options, const std::string& out_path) {
  if (options.constellations.empty())
    throw std::invalid_argument("gen_dataset: no constellations");
  if (options.split_fractions.size() != 3)
    throw std::invalid_argument("gen_dataset: need 3 split fractions");
  double fsum = 0.0;
  for (double f : options.split_fractions) {
    if (f < 0.0) throw std::invalid_argument("gen_dataset: negative split fraction");
    fsum += f;
  }
  if (std::abs(fsum - 1.0) > 1e-9)
    throw std::invalid_argument("gen_dataset: split fractions must sum to 1");
  if (options.n_samples == 0) throw std::invalid_argument("gen_dataset: n_samples = 0");

  DatasetHeader header;
  header.nt = options.nt;
  header.constellations = options.constellations;
  header.n_noise_draws = options.n_noise_draws;
  header.snr_lo_db = options.snr_lo_db;
  header.snr_hi_db = options.snr_hi_db;
  header.split_fractions = options.split_fractions;
  header.seed = options.seed;
  header.n_rows = options.n_samples;

  LabeledDataset ds;
  ds.header = header;
  ds.rows.resize(options.n_samples);

  // Resume: keep the leading complete rows of an existing file whose header
  // matches; rows are seed-derived, so the extension is byte-identical to a
  // fresh run.
  std::uint64_t first_missing = 0;
  if (options.resume && std::filesystem::exists(out_path)) {
    try {
      std::ifstream in(out_path, std::ios::binary);
      std::string line;
      if (std::getline(in, line) && !line.empty() && line[0] == '#' &&
          header_json(header).dump() == line.substr(1)) {
        std::size_t line_no = 1;
        while (first_missing < options.n_samples && std::getline(in, line)) {
          ++line_no;
          if (line.empty()) break;
          DatasetRow row = parse_row(line, header.nt, header.constellations.size(), line_no);
          if (row.row_id != first_missing) break;
          ds.rows[first_missing] = std::move(row);
          ++first_missing;
        }
      }
    } catch (const DataError&) {
      first_missing = 0;  // unusable partial file, regenerate
    }
  }

  const std::uint64_t remaining = options.n_samples - first_missing;
  parallel_for(remaining, options.threads, [&](std::size_t i) {
    const std::uint64_t row_id = first_missing + i;
    ds.rows[row_id] = generate_row(header, row_id);
  });

  save_dataset(ds, out_path);
  return ds;
}

}  // namespace smmi
