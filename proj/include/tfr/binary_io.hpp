#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace tfr::io {

/// Little-endian record builder, independent of host byte order.
class ByteWriter {
public:
    void u8(std::uint8_t v) { buf_.push_back(v); }
    void u64(std::uint64_t v);
    void i64(std::int64_t v) { u64(static_cast<std::uint64_t>(v)); }
    void f64(double v);
    void tag(const char (&t)[5]);
    void bytes(const std::vector<std::uint8_t>& b) { buf_.insert(buf_.end(), b.begin(), b.end()); }
    void vec(const Eigen::VectorXd& v);
    void mat(const Eigen::MatrixXd& m);
    void str(const std::string& s);
    /// Appends `tag`, the payload length, then the payload.
    void section(const char (&t)[5], const ByteWriter& payload);

    const std::vector<std::uint8_t>& data() const noexcept { return buf_; }

private:
    std::vector<std::uint8_t> buf_;
};

class ByteReader {
public:
    ByteReader(const std::uint8_t* data, std::size_t size, std::string what)
        : p_(data), end_(data + size), what_(std::move(what)) {}

    std::uint8_t u8();
    std::uint64_t u64();
    std::int64_t i64() { return static_cast<std::int64_t>(u64()); }
    double f64();
    std::string tag();
    void expect_tag(const char (&t)[5]);
    std::vector<std::uint8_t> bytes(std::size_t n);
    Eigen::VectorXd vec();
    Eigen::MatrixXd mat();
    std::string str();
    /// Reads a tagged section header and returns a reader over its payload.
    ByteReader section(const char (&t)[5]);
    /// u64 count checked against the bytes left, assuming `elem` bytes per element.
    std::size_t count(std::size_t elem);

    bool done() const noexcept { return p_ == end_; }
    std::size_t remaining() const noexcept { return static_cast<std::size_t>(end_ - p_); }

private:
    void need(std::size_t n);

    const std::uint8_t* p_;
    const std::uint8_t* end_;
    std::string what_;
};

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::vector<std::uint8_t>& data);

}  // namespace tfr::io
