#include "semdex/model_io.hpp"

#include "semdex/errors.hpp"
#include "semdex/train.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>

#include <zlib.h>

using namespace semdex;
using namespace semdex::embed;
namespace fs = std::filesystem;

namespace {

struct TempFile {
    fs::path path;
    TempFile() {
        path = fs::temp_directory_path() /
               ("semdex_model_" + std::to_string(std::random_device{}()) + ".sdx");
    }
    ~TempFile() { fs::remove(path); }
};

EmbeddingModel trained_model() {
    auto docs = test::make_cluster_corpus(3, 15);
    auto vocab = corpus::build_vocabulary(docs, 1);
    TrainingConfig cfg;
    cfg.dim = 8;
    cfg.window = 3;
    cfg.epochs = 1;
    cfg.seed = 99;
    cfg.deterministic = true;
    return train(docs, vocab, cfg);
}

std::vector<char> slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void spit(const fs::path& p, const std::vector<char>& bytes) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

// rewrite the trailing CRC so tampered files still pass the checksum and
// exercise the inner consistency checks
void fix_crc(std::vector<char>& bytes) {
    uLong crc = crc32(0L, Z_NULL, 0);
    crc = crc32(crc, reinterpret_cast<const Bytef*>(bytes.data()),
                static_cast<uInt>(bytes.size() - 4));
    for (int i = 0; i < 4; ++i)
        bytes[bytes.size() - 4 + i] = static_cast<char>((crc >> (8 * i)) & 0xFF);
}

bool bitwise_equal(const Matrix& a, const Matrix& b) {
    return a.rows() == b.rows() && a.cols() == b.cols() &&
           std::memcmp(a.data(), b.data(), a.size() * sizeof(float)) == 0;
}

} // namespace

TEST_CASE("round trip reproduces the model bit for bit") {
    auto model = trained_model();
    TempFile file;
    save_model(model, file.path);
    auto loaded = load_model(file.path);

    CHECK(bitwise_equal(loaded.word_in, model.word_in));
    CHECK(bitwise_equal(loaded.doc_in, model.doc_in));
    CHECK(bitwise_equal(loaded.node_out, model.node_out));
    CHECK(loaded.vocab == model.vocab);
    CHECK(loaded.tree.codes == model.tree.codes);
    CHECK(loaded.tree.paths == model.tree.paths);
    CHECK(loaded.config.dim == model.config.dim);
    CHECK(loaded.config.seed == model.config.seed);
    CHECK(loaded.config.alpha0 == model.config.alpha0);
    CHECK(loaded.config.deterministic == model.config.deterministic);

    // save(load(save(m))) is stable
    TempFile file2;
    save_model(loaded, file2.path);
    CHECK(slurp(file.path) == slurp(file2.path));
}

TEST_CASE("corrupted magic bytes are a format error") {
    auto model = trained_model();
    TempFile file;
    save_model(model, file.path);
    auto bytes = slurp(file.path);
    bytes[0] = 'X';
    fix_crc(bytes);
    spit(file.path, bytes);
    CHECK_THROWS_WITH_AS(load_model(file.path), doctest::Contains("magic"),
                         ModelFormatError);
}

TEST_CASE("truncated file is detected") {
    auto model = trained_model();
    TempFile file;
    save_model(model, file.path);
    auto bytes = slurp(file.path);
    bytes.resize(bytes.size() / 2);
    spit(file.path, bytes);
    CHECK_THROWS_AS(load_model(file.path), ModelFormatError);
}

TEST_CASE("flipped payload byte fails the checksum") {
    auto model = trained_model();
    TempFile file;
    save_model(model, file.path);
    auto bytes = slurp(file.path);
    bytes[bytes.size() / 2] ^= 0x40;
    spit(file.path, bytes);
    CHECK_THROWS_WITH_AS(load_model(file.path), doctest::Contains("checksum"),
                         ModelFormatError);
}

TEST_CASE("header dim disagreeing with payload is a consistency error") {
    auto model = trained_model();
    TempFile file;
    save_model(model, file.path);
    auto bytes = slurp(file.path);
    // header dim lives right after magic(4) + format(4) + tiebreak(4);
    // bump it and the config snapshot copy so only the payload disagrees
    const std::size_t header_dim = 12;
    const std::size_t config_dim = 12 + 4 + 8 + 8;
    std::uint32_t dim;
    std::memcpy(&dim, bytes.data() + header_dim, 4);
    dim += 1;
    std::memcpy(bytes.data() + header_dim, &dim, 4);
    std::memcpy(bytes.data() + config_dim, &dim, 4);
    fix_crc(bytes);
    spit(file.path, bytes);
    CHECK_THROWS_WITH_AS(load_model(file.path), doctest::Contains("payload"),
                         ModelFormatError);
}

TEST_CASE("missing file is an input error") {
    CHECK_THROWS_AS(load_model("/nonexistent/model.sdx"), InputError);
}
