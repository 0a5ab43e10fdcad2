#pragma once

#include <vector>

#include "benqc/learners.hpp"

namespace benqc::detail {

// Effective per-instance multiplicities. Absent or all-equal weights yield
// 1.0 per instance, which makes uniformly weighted training bit-identical to
// unweighted training; otherwise weights are scaled by n.
std::vector<double> effective_weights(const Dataset& data);

bool weights_are_uniform(const Dataset& data);

// Column-major view of the dataset's sparse vectors.
struct ColumnView {
    std::vector<std::vector<std::pair<std::uint32_t, double>>> columns;  // (row, value), row-sorted

    static ColumnView build(const Dataset& data);
};

NbModel train_nb(const LearnerSpec& spec, const Dataset& data, bool kernel);
RiModel train_ri(const LearnerSpec& spec, const Dataset& data);
DtModel train_dt(const LearnerSpec& spec, const Dataset& data);

Prediction predict_nb(const NbModel& m, int num_classes, const SparseVector& vec);
Prediction predict_ri(const RiModel& m, int num_classes, const SparseVector& vec);
Prediction predict_dt(const DtModel& m, const SparseVector& vec);

}  // namespace benqc::detail
