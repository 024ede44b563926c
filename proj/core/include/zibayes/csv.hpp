// Apache License, Version 2.0, refer to LICENSE.txt

#ifndef ZIBAYES_CSV_HPP
#define ZIBAYES_CSV_HPP

#include <string>

#include "zibayes/counts.hpp"

namespace zibayes {

/// Reads one count column from a CSV file with a header line.  Extra
/// columns are ignored; parse failures raise DataError with the line
/// number.  Counts must be non-negative integers.
CountSample read_count_column(const std::string& path,
                              const std::string& column = "count");

}  // namespace zibayes

#endif
