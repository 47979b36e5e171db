#ifndef SMMI_DATASET_HPP
#define SMMI_DATASET_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "smmi/channel.hpp"
#include "smmi/constellation.hpp"

namespace smmi {

enum class Split { Train, Val, Test };
std::string to_string(Split split);
Split parse_split(const std::string& name);

// One labeled channel draw: the sampled (gamma, H) pair and the Monte Carlo
// MI target per constellation.
struct DatasetRow {
  std::uint64_t row_id = 0;
  std::uint64_t seed = 0;       // per-row derived seed
  double gamma_db = 0.0;
  Split split = Split::Train;
  Eigen::MatrixXcd h;
  std::vector<double> targets;  // bpcu, one per header constellation

  ChannelRealization channel() const;
};

struct DatasetHeader {
  int nt = 2;
  std::vector<ConstellationKind> constellations;
  int n_noise_draws = 0;
  double snr_lo_db = -20.0;
  double snr_hi_db = 20.0;
  std::vector<double> split_fractions{0.70, 0.15, 0.15};  // train, val, test
  std::uint64_t seed = 0;
  std::uint64_t n_rows = 0;
  int generator_version = 1;
};

struct LabeledDataset {
  DatasetHeader header;
  std::vector<DatasetRow> rows;

  std::vector<const DatasetRow*> split_rows(Split split) const;
  Eigen::MatrixXd targets_of(Split split) const;  // rows x K
};

struct GenOptions {
  int nt = 2;
  std::uint64_t n_samples = 0;
  int n_noise_draws = 2000;
  double snr_lo_db = -20.0;
  double snr_hi_db = 20.0;
  std::vector<ConstellationKind> constellations;
  std::vector<double> split_fractions{0.70, 0.15, 0.15};
  std::uint64_t seed = 1;
  int threads = 0;
  bool resume = true;  // reuse complete leading rows of an existing file
};

// Generates the labeled dataset and writes it to out_path. Rows are derived
// from per-row seeds (derive_seed(seed, row_id)), labels come from mi_finite
// with per-(row, constellation) seeds, splits are contiguous blocks in
// train/val/test order. Byte-identical output for identical options; with
// resume, a partial file with a matching header is extended instead of
// regenerated.
LabeledDataset gen_dataset(const GenOptions& options, const std::string& out_path);

// Dataset file IO: UTF-8, one '#'-prefixed JSON header line, then one CSV
// row per sample (row_id, seed, gamma_db, split, H re/im row-major, targets).
// write(load(path)) reproduces the file byte for byte.
void save_dataset(const LabeledDataset& dataset, const std::string& path);
LabeledDataset load_dataset(const std::string& path);

}  // namespace smmi

#endif
