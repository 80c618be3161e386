#pragma once

#include <string>
#include <vector>

#include "ddiag/linalg.hpp"

// Static SVG figures. Output depends only on the arguments, byte for byte.
namespace ddiag::plots {

// Bar chart of eigenvalues, one bar per value.
std::string scree_svg(const Vector& eigenvalues, const std::string& title);

// Labelled points from the first two columns of `coords`.
std::string scatter_svg(const Matrix& coords, const std::vector<std::string>& labels,
                        const std::string& title, const std::string& x_label,
                        const std::string& y_label);

// Square heatmap of a matrix with entries in [0, 1].
std::string heatmap_svg(const Matrix& values, const std::vector<std::string>& labels,
                        const std::string& title);

}  // namespace ddiag::plots
