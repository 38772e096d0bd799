#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cluvalid/partition.hpp"

namespace cluvalid {

/// Partition text format: UTF-8, one cluster label per line, line i holds
/// the label of element i; blank lines and lines starting with '#' are
/// ignored. A single non-comment line containing commas is read as a
/// comma-separated label list instead.
Partition parse_partition_text(const std::string& text);
Partition load_partition(const std::string& path);

/// Canonical serialization, one numeric label per line.
std::string serialize_partition(const Partition& p);
/// Compact one-line form used in reports: "0,0,1,2".
std::string partition_to_line(const Partition& p);

/// Triplet manifest: one triplet per line, three whitespace-separated file
/// paths, reference first. '#' comments and blank lines are ignored.
struct TripletPaths {
    std::string reference, candidate1, candidate2;
};
std::vector<TripletPaths> load_triplet_manifest(const std::string& path);

/// Minimal CSV writer; quotes fields only when needed.
class CsvWriter {
public:
    explicit CsvWriter(std::ostream& out) : out_(out) {}
    void row(const std::vector<std::string>& fields);

private:
    std::ostream& out_;
};

}  // namespace cluvalid
