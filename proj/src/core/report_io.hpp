#pragma once

#include <string>

#include "core/analysis.hpp"

namespace sfstokes {

// Legacy ASCII VTK unstructured grid: one quadratic triangle per element,
// velocity vectors at every node. The linear pressure is carried as point
// data too, with midpoint values interpolated along their parent edge.
// Values are printed with max_digits10 so a reader recovers them bit-exactly.
void write_solution_vtk(const Mesh& mesh, const DofMap& dm,
                        const Eigen::VectorXd& u_free, const Eigen::VectorXd& p,
                        const std::string& path);

// CSV files; floats are printed in scientific notation with 6 significant
// digits, blank cells where a value is undefined (first-row rates, first
// iteration increment).
void write_multiplier_csv(const Gamma1Trace& tr, const BoundaryTrace& lambda,
                          const std::string& path);
void write_iteration_log_csv(const std::vector<UzawaLogRow>& log, const std::string& path);
void write_study_csv(const StudyResult& study, const std::string& path);
void write_threshold_csv(const std::vector<ThresholdRow>& rows, const std::string& path);

} // namespace sfstokes
