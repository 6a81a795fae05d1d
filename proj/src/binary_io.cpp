#include "tfr/binary_io.hpp"

#include "tfr/error.hpp"

#include <cstring>
#include <fstream>
#include <iterator>

namespace tfr::io {

void ByteWriter::u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void ByteWriter::f64(double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    u64(bits);
}

void ByteWriter::tag(const char (&t)[5]) { buf_.insert(buf_.end(), t, t + 4); }

void ByteWriter::vec(const Eigen::VectorXd& v) {
    u64(static_cast<std::uint64_t>(v.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) f64(v[i]);
}

void ByteWriter::mat(const Eigen::MatrixXd& m) {
    u64(static_cast<std::uint64_t>(m.rows()));
    u64(static_cast<std::uint64_t>(m.cols()));
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i) f64(m(i, j));
}

void ByteWriter::str(const std::string& s) {
    u64(s.size());
    buf_.insert(buf_.end(), s.begin(), s.end());
}

void ByteWriter::section(const char (&t)[5], const ByteWriter& payload) {
    tag(t);
    u64(payload.buf_.size());
    bytes(payload.buf_);
}

void ByteReader::need(std::size_t n) {
    if (remaining() < n) fail(ErrorKind::Io, what_ + ": truncated data");
}

std::uint8_t ByteReader::u8() {
    need(1);
    return *p_++;
}

std::uint64_t ByteReader::u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(p_[i]) << (8 * i);
    p_ += 8;
    return v;
}

double ByteReader::f64() {
    const std::uint64_t bits = u64();
    double v;
    std::memcpy(&v, &bits, sizeof v);
    return v;
}

std::string ByteReader::tag() {
    need(4);
    std::string t(reinterpret_cast<const char*>(p_), 4);
    p_ += 4;
    return t;
}

void ByteReader::expect_tag(const char (&t)[5]) {
    const std::string got = tag();
    if (got != t) fail(ErrorKind::Io, what_ + ": expected section " + t + ", found '" + got + "'");
}

std::vector<std::uint8_t> ByteReader::bytes(std::size_t n) {
    need(n);
    std::vector<std::uint8_t> out(p_, p_ + n);
    p_ += n;
    return out;
}

std::size_t ByteReader::count(std::size_t elem) {
    const std::uint64_t n = u64();
    if (elem > 0 && n > remaining() / elem) fail(ErrorKind::Io, what_ + ": element count exceeds data");
    return static_cast<std::size_t>(n);
}

Eigen::VectorXd ByteReader::vec() {
    const std::size_t n = count(8);
    Eigen::VectorXd v(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) v[static_cast<Eigen::Index>(i)] = f64();
    return v;
}

Eigen::MatrixXd ByteReader::mat() {
    const std::uint64_t rows = u64();
    const std::uint64_t cols = u64();
    if (cols > 0 && rows > remaining() / 8 / cols) fail(ErrorKind::Io, what_ + ": matrix size exceeds data");
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i) m(i, j) = f64();
    return m;
}

std::string ByteReader::str() {
    const std::size_t n = count(1);
    std::string s(reinterpret_cast<const char*>(p_), n);
    p_ += n;
    return s;
}

ByteReader ByteReader::section(const char (&t)[5]) {
    expect_tag(t);
    const std::size_t n = count(1);
    ByteReader sub(p_, n, what_ + "/" + t);
    p_ += n;
    return sub;
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::Io, "cannot open " + path.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::filesystem::path& path, const std::vector<std::uint8_t>& data) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorKind::Io, "cannot write " + path.string());
    out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
    if (!out) fail(ErrorKind::Io, "write failed for " + path.string());
}

}  // namespace tfr::io
