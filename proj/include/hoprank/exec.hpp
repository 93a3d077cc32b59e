#pragma once

namespace hoprank {

/// Selects between the serial reference implementation of a kernel and its
/// parallel counterpart. Both produce bit-identical results; Parallel
/// falls back to serial execution when the build has no OpenMP support.
enum class ExecMode { Serial, Parallel };

/// Number of threads a Parallel kernel may use (1 without OpenMP).
int max_threads();

/// Parallel when OpenMP is available, Serial otherwise.
ExecMode default_exec_mode();

} // namespace hoprank
