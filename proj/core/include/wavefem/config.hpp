#pragma once

#include <string>

#include "wavefem/stepper.hpp"

namespace wavefem {

/// A fully validated experiment description: the simulation itself plus the
/// runner-level settings (fit window, which artifacts to emit, output stem).
struct RunSpec {
    SimConfig sim;

    double fit_lo = -1.0;  // negative = default 0.2*T
    double fit_hi = -1.0;  // negative = default T

    bool want_table = true;
    bool want_decay = true;
    bool want_summary = true;
    bool outputs_explicit = false;  // whether the config listed 'outputs' itself

    std::string name;  // output file stem
};

/// Parses the flat key-value config format.
///
/// Recognized keys: domain, nx, ny, alpha_kind, alpha_value, alpha_expr,
/// beta, semilinear, forcing, u0, u1, utt0, k, T, startup, fit_window,
/// outputs. Required: nx, ny, alpha_kind (with its matching value key),
/// u0, u1, k, T. 'k = auto' derives k = h^2 from the mesh.
///
/// Numeric values are constant expressions (so 'alpha_value = 3*pi' is exact);
/// u0/u1/utt0/alpha_expr may use x and y; forcing may also use t.
/// Errors cite '<source>:<line>:' and name the offending key.
RunSpec parse_config_text(const std::string& text, const std::string& source_name);

/// Reads and parses a config file; the output stem is the file's basename
/// without extension.
RunSpec parse_config_file(const std::string& path);

}  // namespace wavefem
