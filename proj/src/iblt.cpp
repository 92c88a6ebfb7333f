// Copyright (c) 2026 The Blockpress developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "blockpress/iblt.hpp"

#include "blockpress/core.hpp"
#include "blockpress/hash.hpp"
#include "blockpress/serialize.hpp"

#include <cmath>
#include <iterator>

namespace blockpress {

namespace {

// Overhead multipliers for >= 239/240 decode assurance, measured over 1e5
// randomized decodes per pivot (see tests/test_sketches.cpp for the spot
// checks). Small tables need proportionally more headroom than the
// asymptotic 1.5.
struct OverheadPivot {
    std::uint64_t diff;
    double overhead;
};
constexpr OverheadPivot kAssuredOverhead[] = {
    {1, 12.0}, {2, 12.0}, {3, 12.0}, {5, 10.0}, {8, 10.0}, {12, 8.8}, {20, 7.6},
    {35, 6.2}, {60, 5.0}, {100, 4.1}, {200, 3.1}, {400, 2.6}, {800, 2.0},
    {2000, 1.6}, {5000, 1.5}};

double assured_overhead(std::uint64_t diff)
{
    const auto *last = std::end(kAssuredOverhead) - 1;
    if (diff >= last->diff)
        return last->overhead;
    for (const auto *p = std::begin(kAssuredOverhead) + 1; p != std::end(kAssuredOverhead); ++p) {
        if (diff <= p->diff) {
            // log-linear interpolation between pivots
            const auto *q = p - 1;
            const double t = (std::log(static_cast<double>(diff)) - std::log(static_cast<double>(q->diff))) /
                             (std::log(static_cast<double>(p->diff)) - std::log(static_cast<double>(q->diff)));
            return q->overhead + t * (p->overhead - q->overhead);
        }
    }
    return last->overhead;
}

} // namespace

std::uint32_t Iblt::cells_for(std::uint64_t expected_diff, double overhead)
{
    const auto raw = static_cast<std::uint64_t>(
        std::ceil(overhead * static_cast<double>(expected_diff)));
    const std::uint64_t cells = ((raw + kHashes - 1) / kHashes) * kHashes;
    return static_cast<std::uint32_t>(cells < kHashes ? kHashes : cells);
}

std::uint32_t Iblt::cells_for_assured(std::uint64_t diff)
{
    if (diff == 0)
        diff = 1;
    return cells_for(diff, assured_overhead(diff));
}

Iblt::Iblt(std::uint32_t cell_count, std::uint64_t salt) : salt_(salt)
{
    if (cell_count == 0 || cell_count % kHashes != 0)
        throw InfeasibleParameter("iblt: cell_count must be a positive multiple of k");
    cells_.resize(cell_count);
}

std::uint32_t Iblt::check_digest(std::uint64_t id) const
{
    return static_cast<std::uint32_t>(keyed64(salt_ ^ 0x6368656b6bULL, id) >> 32);
}

void Iblt::bump(std::uint64_t id, int dir)
{
    const std::uint32_t region = cell_count() / kHashes;
    const std::uint32_t check = check_digest(id);
    for (std::uint32_t i = 0; i < kHashes; ++i) {
        const std::uint64_t h = keyed64(salt_ + i, id);
        Cell &cell = cells_[i * region + static_cast<std::uint32_t>(h % region)];
        cell.count += dir;
        cell.id_sum ^= id;
        cell.check_sum ^= check;
    }
}

Iblt Iblt::subtract(const Iblt &other) const
{
    if (other.cell_count() != cell_count() || other.salt_ != salt_)
        throw InfeasibleParameter("iblt: subtract requires identical geometry and salt");
    Iblt out(cell_count(), salt_);
    for (std::size_t i = 0; i < cells_.size(); ++i) {
        out.cells_[i].count = cells_[i].count - other.cells_[i].count;
        out.cells_[i].id_sum = cells_[i].id_sum ^ other.cells_[i].id_sum;
        out.cells_[i].check_sum = cells_[i].check_sum ^ other.cells_[i].check_sum;
    }
    return out;
}

Iblt::DecodeResult Iblt::decode() const
{
    Iblt work = *this;
    DecodeResult result;

    std::vector<std::uint32_t> queue;
    queue.reserve(work.cells_.size());
    for (std::uint32_t i = 0; i < work.cell_count(); ++i)
        queue.push_back(i);

    while (!queue.empty()) {
        const std::uint32_t idx = queue.back();
        queue.pop_back();
        const Cell &cell = work.cells_[idx];
        if ((cell.count != 1 && cell.count != -1) ||
            cell.check_sum != work.check_digest(cell.id_sum))
            continue;

        const std::uint64_t id = cell.id_sum;
        const int dir = cell.count;
        if (dir > 0)
            result.left_only.push_back(id);
        else
            result.right_only.push_back(id);
        work.bump(id, -dir);

        // Re-examine the peers of the peeled item.
        const std::uint32_t region = work.cell_count() / kHashes;
        for (std::uint32_t i = 0; i < kHashes; ++i)
            queue.push_back(i * region + static_cast<std::uint32_t>(keyed64(salt_ + i, id) % region));
    }

    result.ok = work.all_zero();
    return result;
}

bool Iblt::all_zero() const
{
    for (const Cell &c : cells_)
        if (c.count != 0 || c.id_sum != 0 || c.check_sum != 0)
            return false;
    return true;
}

std::vector<std::uint8_t> Iblt::serialize() const
{
    ByteWriter w;
    w.u32(cell_count());
    w.u64(salt_);
    for (const Cell &c : cells_) {
        w.u32(static_cast<std::uint32_t>(c.count));
        w.u64(c.id_sum);
        w.u32(c.check_sum);
    }
    return w.take();
}

Iblt Iblt::deserialize(std::span<const std::uint8_t> data)
{
    ByteReader r(data);
    const std::uint32_t n = r.u32();
    const std::uint64_t salt = r.u64();
    Iblt out(n, salt);
    for (Cell &c : out.cells_) {
        c.count = static_cast<std::int32_t>(r.u32());
        c.id_sum = r.u64();
        c.check_sum = r.u32();
    }
    return out;
}

} // namespace blockpress
