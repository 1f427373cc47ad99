// Text formats: sequence CSV, AF surface CSV, bound CSV/JSON, check JSON.
//
// Sequence files start with a format line and a column header:
//
//   # format=iq              # format=phase
//   re,im                    phase
//   1,0                      0
//   ...                      ...
//
// A leading `seq` column (`seq,re,im` / `seq,phase`) stores several
// members of a set in one file, grouped by member index.

#pragma once

#include "aflaz/af.hpp"
#include "aflaz/bounds.hpp"
#include "aflaz/oracle.hpp"

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace aflaz::io {

enum class SequenceFormat { iq, phase };

/// Shortest decimal text that parses back to the same double ("nan" and
/// "inf" for non-finite values).
std::string format_number(double v);

SequenceSet read_sequences(std::istream& in);
SequenceSet read_sequences_file(const std::string& path);

void write_sequences(std::ostream& out, const SequenceSet& set, SequenceFormat format = SequenceFormat::iq);

/// Columns m,m_prime,tau,nu,mag_sq for every ordered pair of the set.
void write_surfaces(std::ostream& out, const SequenceSet& set, const LazSpec& laz,
                    SurfaceMethod method = SurfaceMethod::automatic);

inline constexpr const char* kBoundCsvHeader = "bound,N,M,Zx,Zy,D,q,value,applicable";

std::string bound_csv_row(const BoundReport& r);
void write_bounds_csv(std::ostream& out, const std::vector<BoundReport>& reports);

nlohmann::ordered_json to_json(const BoundReport& r);
nlohmann::ordered_json to_json(const CheckOutcome& c);
nlohmann::ordered_json to_json(const ThetaReport& t);

/// A header plus string cells; every experiment emits one.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::string to_csv() const;
};

/// Writes text to path, creating parent directories.
void write_text(const std::string& path, const std::string& text);

}  // namespace aflaz::io
