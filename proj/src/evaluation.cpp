#include "tfr/evaluation.hpp"

#include "tfr/error.hpp"
#include "tfr/text.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

namespace tfr::evaluation {

double CmcCurve::at(int rank) const {
    if (rank < 1 || static_cast<std::size_t>(rank) > rates.size())
        fail(ErrorKind::InvalidArgument, "rank " + std::to_string(rank) + " is outside the curve");
    return rates[static_cast<std::size_t>(rank - 1)];
}

CmcCurve cmc_from_ranks(const std::vector<int>& ranks, std::size_t gallery_size) {
    if (gallery_size == 0) fail(ErrorKind::InvalidArgument, "gallery size must be positive");
    std::vector<std::size_t> hits(gallery_size, 0);
    for (int r : ranks)
        if (r >= 1 && static_cast<std::size_t>(r) <= gallery_size) ++hits[static_cast<std::size_t>(r - 1)];
    CmcCurve c;
    c.rates.resize(gallery_size, 0.0);
    if (ranks.empty()) return c;
    std::size_t cum = 0;
    for (std::size_t i = 0; i < gallery_size; ++i) {
        cum += hits[i];
        c.rates[i] = static_cast<double>(cum) / static_cast<double>(ranks.size());
    }
    return c;
}

RocCurve roc_from_scores(const std::vector<double>& genuine, const std::vector<double>& impostor) {
    if (genuine.empty() || impostor.empty())
        fail(ErrorKind::InvalidArgument, "ROC needs both genuine and impostor scores");
    std::vector<std::pair<double, bool>> all;
    all.reserve(genuine.size() + impostor.size());
    for (double s : genuine) all.emplace_back(s, true);
    for (double s : impostor) all.emplace_back(s, false);
    for (const auto& [s, g] : all)
        if (std::isnan(s)) fail(ErrorKind::InvalidArgument, "ROC scores must not be NaN");
    std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.first > b.first; });

    RocCurve roc;
    roc.genuine = genuine.size();
    roc.impostor = impostor.size();
    roc.points.push_back({std::numeric_limits<double>::infinity(), 0.0, 0.0});
    std::size_t tp = 0, fp = 0;
    for (std::size_t i = 0; i < all.size();) {
        const double t = all[i].first;
        for (; i < all.size() && all[i].first == t; ++i) (all[i].second ? tp : fp) += 1;
        roc.points.push_back({t, static_cast<double>(fp) / static_cast<double>(roc.impostor),
                              static_cast<double>(tp) / static_cast<double>(roc.genuine)});
    }
    return roc;
}

double roc_auc(const RocCurve& roc) {
    double area = 0.0;
    for (std::size_t i = 1; i < roc.points.size(); ++i) {
        const RocPoint& a = roc.points[i - 1];
        const RocPoint& b = roc.points[i];
        area += (b.fpr - a.fpr) * 0.5 * (a.tpr + b.tpr);
    }
    return area;
}

std::string to_string(Condition c) {
    switch (c) {
    case Condition::Unoccluded: return "Unoccluded";
    case Condition::FacialHair: return "Facial hair";
    case Condition::EyeWear: return "Eye-wear";
    }
    return "?";
}

std::string split_name(int band) {
    if (band < 0 || band > 2) fail(ErrorKind::InvalidArgument, "pose split index must be 0, 1 or 2");
    static const char* const names[] = {"roc_d00_30", "roc_d30_60", "roc_d60_90"};
    return names[band];
}

namespace {

int pose_band(double delta) {
    if (delta < kPoseDeltaEdges[1]) return 0;
    if (delta < kPoseDeltaEdges[2]) return 1;
    return 2;
}

}  // namespace

Report evaluate(const std::vector<recognition::Signature>& probes, const recognition::Gallery& g) {
    if (g.empty()) fail(ErrorKind::InvalidArgument, "gallery is empty");
    if (probes.empty()) fail(ErrorKind::InvalidArgument, "no probes to evaluate");
    for (std::size_t i = 0; i < probes.size(); ++i)
        if (!g.contains(probes[i].source.identity))
            fail(ErrorKind::InvalidArgument, "probe " + std::to_string(i) + " (identity '" +
                                                 probes[i].source.identity + "') is not enrolled");

    Report rep;
    rep.ranked.resize(probes.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(probes.size()); ++i)
        rep.ranked[static_cast<std::size_t>(i)] = recognition::identify(probes[static_cast<std::size_t>(i)], g);

    bool have_yaw = true;
    for (const auto& [id, s] : g.entries()) have_yaw = have_yaw && s.source.has_yaw();
    for (const auto& p : probes) have_yaw = have_yaw && p.source.has_yaw();

    std::vector<double> genuine, impostor;
    std::array<std::vector<double>, 3> split_gen, split_imp;
    std::array<std::vector<int>, 3> cond_ranks;
    for (std::size_t i = 0; i < probes.size(); ++i) {
        const recognition::SourceInfo& src = probes[i].source;
        const int rank = recognition::rank_of(rep.ranked[i], src.identity);
        rep.ranks.push_back(rank);

        const recognition::SourceInfo& enrolled = g.at(src.identity).source;
        const bool hair = enrolled.hair != src.hair;
        const bool glasses = enrolled.glasses != src.glasses;
        if (!hair && !glasses) cond_ranks[0].push_back(rank);
        if (hair) cond_ranks[1].push_back(rank);
        if (glasses) cond_ranks[2].push_back(rank);

        for (const auto& e : rep.ranked[i]) {
            const bool same = e.identity == src.identity;
            (same ? genuine : impostor).push_back(e.score);
            if (have_yaw) {
                const int band = pose_band(std::abs(src.yaw - g.at(e.identity).source.yaw));
                (same ? split_gen : split_imp)[static_cast<std::size_t>(band)].push_back(e.score);
            }
        }
    }
    rep.cmc = cmc_from_ranks(rep.ranks, g.size());
    if (!impostor.empty()) {
        rep.roc = roc_from_scores(genuine, impostor);
        rep.auc = roc_auc(rep.roc);
    }
    for (std::size_t c = 0; c < 3; ++c) {
        rep.by_condition[c].probes = cond_ranks[c].size();
        rep.by_condition[c].cmc = cmc_from_ranks(cond_ranks[c], g.size());
    }
    if (have_yaw) {
        // A band missing either class keeps an empty curve and is not written.
        std::array<RocCurve, 3> splits;
        for (std::size_t b = 0; b < 3; ++b)
            if (!split_gen[b].empty() && !split_imp[b].empty()) splits[b] = roc_from_scores(split_gen[b], split_imp[b]);
        rep.pose_splits = splits;
    }
    return rep;
}

std::string summary_table(const Report& r) {
    static const char* const row_label[] = {"Rank 1", "Rank 2", "Rank 3"};
    std::vector<std::string> headers;
    for (Condition c : kConditions) headers.push_back(to_string(c));

    auto pad_left = [](const std::string& s, std::size_t w) { return std::string(w > s.size() ? w - s.size() : 0, ' ') + s; };
    const std::size_t label_w = 6;
    std::string out = "Average recognition rate\n";
    out += std::string(label_w, ' ');
    for (const auto& h : headers) out += " | " + h;
    out += "\n";
    out += std::string(label_w, '-');
    for (const auto& h : headers) out += "-+-" + std::string(h.size(), '-');
    out += "\n";
    for (int rank = 1; rank <= 3; ++rank) {
        out += row_label[rank - 1];
        for (std::size_t c = 0; c < headers.size(); ++c) {
            const ConditionResult& cr = r.by_condition[c];
            std::string cell = "-";
            if (cr.probes > 0 && static_cast<std::size_t>(rank) <= cr.cmc.rates.size())
                cell = std::to_string(std::lround(100.0 * cr.cmc.at(rank))) + "%";
            out += " | " + pad_left(cell, headers[c].size());
        }
        out += "\n";
    }
    out += "Probes";
    for (std::size_t c = 0; c < headers.size(); ++c)
        out += " | " + pad_left(std::to_string(r.by_condition[c].probes), headers[c].size());
    out += "\n";
    return out;
}

std::string cmc_csv(const CmcCurve& c) {
    std::string out = "rank,rate\n";
    for (std::size_t i = 0; i < c.rates.size(); ++i)
        out += std::to_string(i + 1) + "," + text::format_double(c.rates[i]) + "\n";
    return out;
}

std::string roc_csv(const RocCurve& r) {
    std::string out = "threshold,fpr,tpr\n";
    for (const RocPoint& p : r.points)
        out += text::format_double(p.threshold) + "," + text::format_double(p.fpr) + "," + text::format_double(p.tpr) +
               "\n";
    return out;
}

namespace {

void write_text(const std::filesystem::path& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << body;
    if (!out) fail(ErrorKind::Io, "cannot write " + path.string());
}

}  // namespace

void write_report(const std::filesystem::path& dir, const Report& r) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) fail(ErrorKind::Io, "cannot create " + dir.string() + ": " + ec.message());
    write_text(dir / "cmc.csv", cmc_csv(r.cmc));
    write_text(dir / "roc.csv", roc_csv(r.roc));
    write_text(dir / "summary.txt", summary_table(r));
    if (r.pose_splits)
        for (int b = 0; b < 3; ++b)
            if (!(*r.pose_splits)[static_cast<std::size_t>(b)].points.empty())
                write_text(dir / (split_name(b) + ".csv"), roc_csv((*r.pose_splits)[static_cast<std::size_t>(b)]));
}

}  // namespace tfr::evaluation
