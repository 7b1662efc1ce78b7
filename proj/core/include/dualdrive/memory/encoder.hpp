#pragma once

#include <memory>
#include <string>
#include <vector>

#include "dualdrive/errors.hpp"
#include "dualdrive/perception/scene.hpp"

namespace dualdrive::memory {

struct Embedding {
    std::vector<double> v;
    std::string encoder_id;

    std::size_t dim() const { return v.size(); }
};

class TextEncoder {
public:
    virtual ~TextEncoder() = default;
    virtual Embedding encode(const std::string& text) const = 0;
    virtual std::string id() const = 0;
    virtual std::size_t dim() const = 0;
};

// Deterministic offline encoder: hashes caption tokens ('|' and ';'
// separated) into a fixed-dimension count vector, then L2-normalizes.
// Identical text always yields an identical vector; empty text maps to
// the zero vector.
class HashEncoder final : public TextEncoder {
public:
    explicit HashEncoder(std::size_t dim = 256);
    Embedding encode(const std::string& text) const override;
    std::string id() const override { return id_; }
    std::size_t dim() const override { return dim_; }

    static std::uint64_t token_hash(std::string_view token);
    static std::size_t token_bucket(std::string_view token, std::size_t dim);

private:
    std::size_t dim_;
    std::string id_;
};

// Compressed caption: one `category|lane|distance-bucket|motion` group per
// critical object, ascending distance, ';'-joined. Empty scenes compress
// to "none". Distance buckets are 5 m wide.
std::string compress_caption(const perception::SceneDescription& d);
std::string distance_bucket(double distance);

// Cosine similarity; returns 0 when either norm is zero. Throws Error on
// dimension mismatch.
double cosine_similarity(const Embedding& a, const Embedding& b);

}  // namespace dualdrive::memory
