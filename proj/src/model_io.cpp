#include "semdex/model_io.hpp"

#include "semdex/errors.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <limits>
#include <vector>

#include <zlib.h>

namespace semdex::embed {

namespace {

constexpr char kMagic[4] = {'S', 'D', 'X', '1'};
constexpr std::uint32_t kFormatVersion = 1;

class Writer {
public:
    void u8(std::uint8_t v) { buf_.push_back(static_cast<char>(v)); }
    void u32(std::uint32_t v) {
        for (int i = 0; i < 4; ++i) buf_.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
    }
    void u64(std::uint64_t v) {
        for (int i = 0; i < 8; ++i) buf_.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
    }
    void f32(float v) { u32(std::bit_cast<std::uint32_t>(v)); }
    void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
    void bytes(const void* p, std::size_t n) {
        buf_.insert(buf_.end(), static_cast<const char*>(p),
                    static_cast<const char*>(p) + n);
    }
    void str(const std::string& s) {
        u32(static_cast<std::uint32_t>(s.size()));
        bytes(s.data(), s.size());
    }
    const std::vector<char>& data() const { return buf_; }

private:
    std::vector<char> buf_;
};

class Reader {
public:
    Reader(const char* data, std::size_t size) : data_(data), size_(size) {}

    std::uint8_t u8() { return static_cast<std::uint8_t>(take(1)[0]); }
    std::uint32_t u32() {
        const char* p = take(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(p[i])) << (8 * i);
        return v;
    }
    std::uint64_t u64() {
        const char* p = take(8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(p[i])) << (8 * i);
        return v;
    }
    float f32() { return std::bit_cast<float>(u32()); }
    double f64() { return std::bit_cast<double>(u64()); }
    std::string str() {
        std::uint32_t n = u32();
        const char* p = take(n);
        return std::string(p, n);
    }
    const char* take(std::size_t n) {
        if (pos_ + n > size_) throw ModelFormatError("model file truncated");
        const char* p = data_ + pos_;
        pos_ += n;
        return p;
    }
    std::size_t remaining() const { return size_ - pos_; }

private:
    const char* data_;
    std::size_t size_;
    std::size_t pos_ = 0;
};

void write_matrix(Writer& w, const Matrix& m) {
    static_assert(std::endian::native == std::endian::little,
                  "matrix block fast path assumes little-endian floats");
    w.bytes(m.data(), m.size() * sizeof(float));
}

void read_matrix(Reader& r, Matrix& m) {
    const char* p = r.take(m.size() * sizeof(float));
    std::memcpy(m.data(), p, m.size() * sizeof(float));
}

std::uint32_t crc_of(const char* data, std::size_t n) {
    uLong crc = crc32(0L, Z_NULL, 0);
    // crc32 takes uInt chunks; files here are far below the 4 GiB limit,
    // but chunk anyway.
    while (n > 0) {
        uInt chunk = static_cast<uInt>(std::min<std::size_t>(n, 1u << 30));
        crc = crc32(crc, reinterpret_cast<const Bytef*>(data), chunk);
        data += chunk;
        n -= chunk;
    }
    return static_cast<std::uint32_t>(crc);
}

void write_config(Writer& w, const TrainingConfig& c) {
    w.u32(c.dim);
    w.u32(c.window);
    w.f64(c.alpha0);
    w.f64(c.alpha_min);
    w.u32(c.epochs);
    w.u64(c.seed);
    w.u8(c.deterministic ? 1 : 0);
    w.u32(c.threads);
    w.f64(c.subsample);
    w.u8(c.reduced_window ? 1 : 0);
}

TrainingConfig read_config(Reader& r) {
    TrainingConfig c;
    c.dim = r.u32();
    c.window = r.u32();
    c.alpha0 = r.f64();
    c.alpha_min = r.f64();
    c.epochs = r.u32();
    c.seed = r.u64();
    c.deterministic = r.u8() != 0;
    c.threads = r.u32();
    c.subsample = r.f64();
    c.reduced_window = r.u8() != 0;
    return c;
}

} // namespace

void save_model(const EmbeddingModel& model, const std::filesystem::path& path) {
    Writer w;
    w.bytes(kMagic, 4);
    w.u32(kFormatVersion);
    w.u32(HuffmanTree::kTieBreakVersion);
    w.u32(model.config.dim);
    w.u64(model.vocab.size());
    w.u64(model.vocab.doc_labels().size());
    write_config(w, model.config);
    w.u32(model.vocab.min_count());
    for (const auto& entry : model.vocab.words()) {
        w.str(entry.word);
        w.u64(entry.count);
    }
    for (const auto& label : model.vocab.doc_labels()) w.str(label);
    write_matrix(w, model.word_in);
    write_matrix(w, model.doc_in);
    write_matrix(w, model.node_out);

    std::uint32_t crc = crc_of(w.data().data(), w.data().size());

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write model file: " + path.string());
    out.write(w.data().data(), static_cast<std::streamsize>(w.data().size()));
    char trailer[4];
    for (int i = 0; i < 4; ++i) trailer[i] = static_cast<char>((crc >> (8 * i)) & 0xFF);
    out.write(trailer, 4);
    if (!out) throw InputError("write failed: " + path.string());
}

EmbeddingModel load_model(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open model file: " + path.string());
    std::vector<char> bytes((std::istreambuf_iterator<char>(in)),
                            std::istreambuf_iterator<char>());
    if (bytes.size() < 8) throw ModelFormatError("model file truncated");

    // Structural parse first (bounds-checked reads report truncation with
    // its own message); the checksum is verified once the shape is known.
    Reader r(bytes.data(), bytes.size() - 4);
    if (std::memcmp(r.take(4), kMagic, 4) != 0)
        throw ModelFormatError("not a model file (bad magic)");
    std::uint32_t version = r.u32();
    if (version != kFormatVersion)
        throw ModelFormatError("unsupported model format version " + std::to_string(version));
    std::uint32_t tie_break = r.u32();
    if (tie_break != HuffmanTree::kTieBreakVersion)
        throw ModelFormatError("unsupported Huffman tie-break version " +
                               std::to_string(tie_break));

    std::uint32_t dim = r.u32();
    std::uint64_t v = r.u64();
    std::uint64_t d = r.u64();
    TrainingConfig config = read_config(r);
    if (config.dim != dim)
        throw ModelFormatError("header dim disagrees with config snapshot");

    std::uint32_t min_count = r.u32();
    std::vector<corpus::VocabEntry> words;
    words.reserve(v);
    for (std::uint64_t i = 0; i < v; ++i) {
        corpus::VocabEntry e;
        e.word = r.str();
        e.count = r.u64();
        words.push_back(std::move(e));
    }
    std::vector<std::string> labels;
    labels.reserve(d);
    for (std::uint64_t i = 0; i < d; ++i) labels.push_back(r.str());

    EmbeddingModel model;
    model.config = config;
    model.vocab = corpus::Vocabulary(std::move(words), std::move(labels), min_count);
    model.word_in = Matrix(v, dim);
    model.doc_in = Matrix(d, dim);
    model.node_out = Matrix(std::max<std::uint64_t>(v >= 2 ? v - 1 : 1, 1), dim);
    read_matrix(r, model.word_in);
    read_matrix(r, model.doc_in);
    read_matrix(r, model.node_out);
    if (r.remaining() != 0)
        throw ModelFormatError("payload size disagrees with header dimensions");

    std::uint32_t stored_crc = 0;
    for (int i = 0; i < 4; ++i)
        stored_crc |= static_cast<std::uint32_t>(
                          static_cast<unsigned char>(bytes[bytes.size() - 4 + i]))
                      << (8 * i);
    if (crc_of(bytes.data(), bytes.size() - 4) != stored_crc)
        throw ModelFormatError("model file checksum mismatch");

    if (v > 0) model.tree = build_huffman(model.vocab.words());
    return model;
}

} // namespace semdex::embed
