#include "semdex/train.hpp"

#include "semdex/hs.hpp"

#include <atomic>
#include <cmath>
#include <random>
#include <stdexcept>
#include <thread>
#include <vector>

namespace semdex::embed {

namespace {

struct EncodedDoc {
    std::size_t doc_row = 0;
    std::vector<std::uint32_t> words; // in-vocabulary tokens, in order
};

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    // splitmix64 finalizer over (seed, stream)
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace

double linear_lr(double alpha0, double alpha_min, std::uint64_t step,
                 std::uint64_t total_steps) {
    if (total_steps <= 1) return alpha0;
    if (step >= total_steps) return alpha_min;
    double frac = static_cast<double>(step) / static_cast<double>(total_steps - 1);
    return alpha0 + (alpha_min - alpha0) * frac;
}

EmbeddingModel train(const std::vector<corpus::ProcessedDocument>& docs,
                     const corpus::Vocabulary& vocab, const TrainingConfig& config,
                     TrainStats* stats) {
    if (docs.empty()) throw std::invalid_argument("train: empty corpus");
    TrainingConfig cfg = config;
    cfg.validate_and_normalize();

    std::vector<EncodedDoc> encoded;
    encoded.reserve(docs.size());
    std::uint64_t positions = 0;
    for (const auto& doc : docs) {
        auto row = vocab.label_index(doc.label);
        if (!row)
            throw std::invalid_argument("train: document label missing from vocabulary: " +
                                        doc.label);
        EncodedDoc e;
        e.doc_row = *row;
        e.words.reserve(doc.tokens.size());
        for (const auto& tok : doc.tokens)
            if (auto idx = vocab.index_of(tok))
                e.words.push_back(static_cast<std::uint32_t>(*idx));
        positions += e.words.size();
        encoded.push_back(std::move(e));
    }
    if (positions == 0)
        throw std::invalid_argument("train: vocabulary/corpus mismatch, no trainable positions");

    const std::size_t v = vocab.size();
    const std::size_t d = vocab.doc_labels().size();
    const std::size_t dim = cfg.dim;

    EmbeddingModel model;
    model.vocab = vocab;
    model.config = cfg;
    model.tree = build_huffman(vocab.words());
    model.word_in = Matrix(v, dim);
    model.doc_in = Matrix(d, dim);
    model.node_out = Matrix(std::max<std::size_t>(v >= 2 ? v - 1 : 1, 1), dim);

    // Word rows then document rows, uniform in [-0.5/dim, 0.5/dim);
    // node_out stays zero.
    std::mt19937_64 init_rng(cfg.seed);
    auto init_matrix = [&](Matrix& m) {
        for (std::size_t i = 0; i < m.size(); ++i)
            m.data()[i] = static_cast<float>((uniform01(init_rng) - 0.5) / dim);
    };
    init_matrix(model.word_in);
    init_matrix(model.doc_in);

    const std::uint64_t total_steps = positions * cfg.epochs;
    if (stats) {
        stats->positions_per_epoch = positions;
        stats->total_steps = total_steps;
        stats->final_alpha =
            total_steps ? linear_lr(cfg.alpha0, cfg.alpha_min, total_steps - 1, total_steps)
                        : cfg.alpha0;
    }
    if (cfg.epochs == 0) return model;

    // Subsampling keep probabilities (word2vec rule), when enabled.
    std::vector<double> keep;
    if (cfg.subsample > 0.0) {
        std::uint64_t total_words = 0;
        for (const auto& e : vocab.words()) total_words += e.count;
        keep.resize(v, 1.0);
        for (std::size_t i = 0; i < v; ++i) {
            double f = static_cast<double>(vocab.entry(i).count) /
                       static_cast<double>(total_words);
            double t = cfg.subsample;
            keep[i] = std::min(1.0, (std::sqrt(f / t) + 1.0) * t / f);
        }
    }

    std::atomic<std::uint64_t> step_counter{0};

    auto worker = [&](unsigned tid, std::size_t doc_lo, std::size_t doc_hi) {
        std::mt19937_64 rng(mix_seed(cfg.seed, tid));
        std::vector<float> ctx(dim), herr(dim);
        std::vector<std::uint32_t> kept;
        for (std::uint32_t epoch = 0; epoch < cfg.epochs; ++epoch) {
            for (std::size_t di = doc_lo; di < doc_hi; ++di) {
                const EncodedDoc& e = encoded[di];
                float* doc_row = model.doc_in.row(e.doc_row).data();

                const std::vector<std::uint32_t>* seq = &e.words;
                std::uint64_t skipped = 0;
                if (!keep.empty()) {
                    kept.clear();
                    for (std::uint32_t w : e.words)
                        if (uniform01(rng) < keep[w]) kept.push_back(w);
                    skipped = e.words.size() - kept.size();
                    seq = &kept;
                }

                const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(seq->size());
                for (std::ptrdiff_t t = 0; t < n; ++t) {
                    std::uint64_t step = step_counter.fetch_add(1, std::memory_order_relaxed);
                    const float alpha = static_cast<float>(
                        linear_lr(cfg.alpha0, cfg.alpha_min, step, total_steps));
                    const std::ptrdiff_t radius =
                        cfg.reduced_window
                            ? 1 + static_cast<std::ptrdiff_t>(rng() % cfg.window)
                            : static_cast<std::ptrdiff_t>(cfg.window);
                    const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, t - radius);
                    const std::ptrdiff_t hi = std::min<std::ptrdiff_t>(n - 1, t + radius);

                    // context vector: mean of doc row and in-window word rows
                    for (std::size_t j = 0; j < dim; ++j) ctx[j] = doc_row[j];
                    int members = 1;
                    for (std::ptrdiff_t p = lo; p <= hi; ++p) {
                        if (p == t) continue;
                        const float* wr = model.word_in.row((*seq)[p]).data();
                        for (std::size_t j = 0; j < dim; ++j) ctx[j] += wr[j];
                        ++members;
                    }
                    const float inv = 1.0f / static_cast<float>(members);
                    for (std::size_t j = 0; j < dim; ++j) ctx[j] *= inv;

                    // one SGD step along the Huffman path of the target word
                    const std::uint32_t target = (*seq)[t];
                    const auto& path = model.tree.paths[target];
                    const auto& code = model.tree.codes[target];
                    for (std::size_t j = 0; j < dim; ++j) herr[j] = 0.0f;
                    for (std::size_t k = 0; k < path.size(); ++k) {
                        float* nr = model.node_out.row(static_cast<std::size_t>(path[k])).data();
                        double dot = 0.0;
                        for (std::size_t j = 0; j < dim; ++j)
                            dot += static_cast<double>(nr[j]) * static_cast<double>(ctx[j]);
                        const float g = static_cast<float>(
                            ((1.0 - static_cast<double>(code[k])) - sigmoid(dot)) * alpha);
                        for (std::size_t j = 0; j < dim; ++j) herr[j] += g * nr[j];
                        for (std::size_t j = 0; j < dim; ++j) nr[j] += g * ctx[j];
                    }

                    // distribute the context error to every contributor
                    for (std::size_t j = 0; j < dim; ++j) doc_row[j] += herr[j];
                    for (std::ptrdiff_t p = lo; p <= hi; ++p) {
                        if (p == t) continue;
                        float* wr = model.word_in.row((*seq)[p]).data();
                        for (std::size_t j = 0; j < dim; ++j) wr[j] += herr[j];
                    }
                }
                if (skipped) step_counter.fetch_add(skipped, std::memory_order_relaxed);
            }
        }
    };

    const unsigned nthreads =
        std::min<std::size_t>(cfg.threads, std::max<std::size_t>(encoded.size(), 1));
    if (nthreads <= 1) {
        worker(0, 0, encoded.size());
    } else {
        // Hogwild-style: workers update the shared matrices without locks.
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        const std::size_t chunk = (encoded.size() + nthreads - 1) / nthreads;
        for (unsigned t = 0; t < nthreads; ++t) {
            std::size_t lo = t * chunk;
            std::size_t hi = std::min(encoded.size(), lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back(worker, t, lo, hi);
        }
        for (auto& th : pool) th.join();
    }
    return model;
}

double corpus_log_loss(const EmbeddingModel& model,
                       const std::vector<corpus::ProcessedDocument>& docs) {
    const std::size_t dim = model.config.dim;
    const std::ptrdiff_t window = model.config.window;
    std::vector<float> ctx(dim);
    double loss = 0.0;
    for (const auto& doc : docs) {
        auto row = model.vocab.label_index(doc.label);
        if (!row) continue;
        std::vector<std::uint32_t> words;
        for (const auto& tok : doc.tokens)
            if (auto idx = model.vocab.index_of(tok))
                words.push_back(static_cast<std::uint32_t>(*idx));
        auto doc_row = model.doc_in.row(*row);
        const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(words.size());
        for (std::ptrdiff_t t = 0; t < n; ++t) {
            const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, t - window);
            const std::ptrdiff_t hi = std::min<std::ptrdiff_t>(n - 1, t + window);
            for (std::size_t j = 0; j < dim; ++j) ctx[j] = doc_row[j];
            int members = 1;
            for (std::ptrdiff_t p = lo; p <= hi; ++p) {
                if (p == t) continue;
                auto wr = model.word_in.row(words[p]);
                for (std::size_t j = 0; j < dim; ++j) ctx[j] += wr[j];
                ++members;
            }
            const float inv = 1.0f / static_cast<float>(members);
            for (std::size_t j = 0; j < dim; ++j) ctx[j] *= inv;
            loss -= hs_log_prob<float>(model.node_out, model.tree, words[t],
                                       std::span<const float>(ctx));
        }
    }
    return loss;
}

} // namespace semdex::embed
