#include "expansion/derive.hpp"

#include <cstdio>

namespace softedge {

std::vector<double> default_extraction_grid()
{
    std::vector<double> s;
    for (int i = 0; i <= 28; ++i) s.push_back(-5 + 0.25 * i);
    return s;
}

DeriveReport derive_from_samples(const std::vector<LadderSamples>& ladders, int j_max, int fit_terms,
                                 const RoundingOptions& rounding)
{
    require(!ladders.empty(), Status::invalid_argument, "derive: no ladders");
    require(j_max >= 1 && j_max <= 2, Status::invalid_argument, "derive: j_max must be 1 or 2");
    const auto& xis = ladders[0].xis;
    for (const auto& l : ladders) require(l.xis == xis, Status::invalid_argument, "derive: ladders disagree on xi");

    DeriveReport rep;
    for (const auto& l : ladders) rep.taus.push_back(l.tau);
    rep.rec.resize(xis.size());
    rep.rounded = true;
    for (size_t x = 0; x < xis.size(); ++x) {
        // known[l][j-1] = G_j on ladder l's grid, from rounded rows
        std::vector<std::vector<std::vector<double>>> known(ladders.size());
        for (int j = 1; j <= j_max; ++j) {
            std::vector<CorrectionCurve> curves;
            for (size_t l = 0; l < ladders.size(); ++l) {
                auto G = extract_corrections(ladders[l], int(x), known[l], 1, fit_terms - (j - 1));
                curves.push_back({ladders[l].tau, ladders[l].s, G[0], ladders[l].F[x]});
            }
            Reconstruction r = reconstruct_polynomials(curves, j, rounding);
            rep.rounded = rep.rounded && r.rounded;
            for (size_t l = 0; l < ladders.size(); ++l)
                known[l].push_back(assemble(r.row, ladders[l].tau, ladders[l].s, ladders[l].F[x]));
            rep.rec[x].push_back(std::move(r));
        }
    }

    rep.xi_consistent = true;
    for (size_t x = 1; x < xis.size(); ++x)
        for (int j = 0; j < j_max; ++j)
            if (rep.rec[x][j].row != rep.rec[0][j].row) rep.xi_consistent = false;

    for (int j = 1; j <= j_max; ++j) {
        double cert = 0;
        for (auto& r : rep.rec) cert = std::max(cert, r[j - 1].certificate);
        char buf[128];
        std::snprintf(buf, sizeof buf, "residual=%.2e;xi_agree=%s", cert, rep.xi_consistent ? "yes" : "no");
        const auto& row = rep.rec[0][j - 1].row;
        for (int k = 1; k <= 2 * j; ++k) rep.table.set(2, j, k, row[k - 1], Provenance::DerivedNumeric, buf);
    }
    apply_transfers(rep.table);
    return rep;
}

DeriveReport derive_table(const DeriveOptions& opt)
{
    std::vector<double> grid = opt.s_grid.empty() ? default_extraction_grid() : opt.s_grid;
    std::vector<LadderSpec> specs;
    auto ns = geometric_ladder(opt.ladder_first, opt.ladder_steps);
    if (opt.gaussian) specs.push_back({Family::Gaussian, 1.0, ns});
    for (double r : opt.ratios) specs.push_back({Family::Laguerre, r, ns});
    std::vector<LadderSamples> ladders;
    for (const auto& sp : specs) {
        if (opt.log) {
            char buf[160];
            std::snprintf(buf, sizeof buf, "sampling %s ladder (ratio %g, n = %d..%d, %zu s-points)",
                          family_name(sp.family), sp.family == Family::Gaussian ? 0.0 : sp.ratio, ns.front(),
                          ns.back(), grid.size());
            opt.log(buf);
        }
        ladders.push_back(sample_ladder(sp, grid, opt.xis, 2 * opt.j_max, opt.workers));
    }
    DeriveReport rep = derive_from_samples(ladders, opt.j_max, opt.fit_terms, opt.rounding);
    rep.table.source = "derive";
    rep.table.commit = SOFTEDGE_COMMIT;
    return rep;
}

} // namespace softedge
