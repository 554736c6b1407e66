#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace fas::csv {

// Shortest decimal string that parses back to exactly the same double.
// Tries %.15g, %.16g, %.17g in turn.
std::string format_double(double v);

// Same idea in forced scientific notation (%.*e), for columns whose values
// span many orders of magnitude.
std::string format_double_sci(double v);

// In-memory CSV: leading '# ' comment lines, one header line, data rows.
// Cells are kept as raw strings so a read/write cycle is byte-identical.
struct Table {
    std::vector<std::string> comments;  // without the '# ' prefix or newline
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

// Writes UTF-8 with LF line endings; throws fas::io_error on failure.
void write_table(const std::filesystem::path& path, const Table& table);

// Throws fas::io_error when the file cannot be read.
Table read_table(const std::filesystem::path& path);

// Incremental writer for the common emit-as-you-go case.
class Writer {
public:
    explicit Writer(const std::filesystem::path& path);
    ~Writer();
    Writer(const Writer&) = delete;
    Writer& operator=(const Writer&) = delete;

    void comment(const std::string& line);
    void header(const std::vector<std::string>& names);
    void row(const std::vector<std::string>& cells);

    // Flushes and closes; throws fas::io_error if the stream went bad.
    void close();

private:
    std::filesystem::path path_;
    std::string buffer_;
    bool closed_ = false;
};

} // namespace fas::csv
