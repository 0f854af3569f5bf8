use crate::lattice::SubgroupLattice;
use crate::pi::{has_d_pi_property_in, o_pi, o_pi_in, o_upper_pi, o_upper_pi_in};
use crate::primes::{is_pi_number, prime_support};
use crate::sigma::{
    s_permutable, sigma_nilpotent_members, sigma_subnormal_set_in, Permutability,
    PermutabilityLevel, SigmaAnalysis,
};

use super::report::{ClaimId, WitnessRecord};
use super::GroupContext;

use PermutabilityLevel::{One, Skiba, Three, Two};

/// Every element of a lattice member, in cycle notation.
fn list_elements(lattice: &SubgroupLattice, h: usize) -> String {
    let g = lattice.group();
    let elems: Vec<String> = lattice
        .members(h)
        .iter()
        .map(|x| g.element(x).to_string())
        .collect();
    format!("{{{}}}", elems.join(", "))
}

fn describe(lattice: &SubgroupLattice, h: usize) -> String {
    lattice.describe(h)
}

fn outcome_text(lattice: &SubgroupLattice, out: &Permutability) -> (Option<String>, String) {
    match out {
        Permutability::Holds => (None, "holds".into()),
        Permutability::Fails(w) => (
            Some(w.block.to_string()),
            format!("fails against {}", describe(lattice, w.subgroup)),
        ),
        Permutability::Undefined { block } => (
            Some(block.to_string()),
            "undefined (no Hall subgroup)".into(),
        ),
    }
}

fn witness(
    subgroups: Vec<String>,
    block: Option<String>,
    offending: impl Into<String>,
) -> WitnessRecord {
    WitnessRecord {
        subgroups,
        block,
        offending: offending.into(),
    }
}

/// Runs one claim; `None` when its hypothesis does not hold for this (G, σ).
pub(crate) fn check(
    ctx: &GroupContext,
    an: &SigmaAnalysis<'_>,
    claim: ClaimId,
) -> Option<Vec<WitnessRecord>> {
    let lat = ctx.lattice();
    let singletons = an.sigma().is_singletons();
    let s_perm = || -> Vec<bool> { (0..lat.len()).map(|h| s_permutable(lat, h)).collect() };
    let level = |l| -> Vec<bool> { an.outcomes(l).iter().map(Permutability::holds).collect() };
    Some(match claim {
        ClaimId::T1 => levels_agree(lat, an, &[Two, Three], &(0..lat.len()).collect::<Vec<_>>()),
        ClaimId::T2 => sections_nilpotent(ctx, an, &level(Three)),
        ClaimId::C1 if singletons => sections_nilpotent(ctx, an, &s_perm()),
        ClaimId::C2 if an.skiba_defined() => sections_nilpotent(ctx, an, &level(Skiba)),
        ClaimId::T3a => {
            let nil: Vec<usize> = (0..lat.len())
                .filter(|&h| an.is_sigma_nilpotent_subgroup(h))
                .collect();
            levels_agree(lat, an, &[One, Two, Three], &nil)
        }
        ClaimId::T3b => hall_parts(lat, an, &level(Three)),
        ClaimId::C4 if singletons => hall_parts(lat, an, &s_perm()),
        ClaimId::T4 => sublattice(lat, &level(Three)),
        ClaimId::C5 if singletons => sublattice(lat, &s_perm()),
        ClaimId::C6 if d_pi_everywhere(lat, an) => sublattice(lat, &level(Skiba)),
        ClaimId::T5 => normalizers(lat, &level(Three)),
        ClaimId::C7 if singletons => normalizers(lat, &s_perm()),
        ClaimId::C3 => (0..lat.len())
            .filter(|&h| an.is_permutable(h, Three) && !an.is_subnormal(h))
            .map(|h| {
                witness(
                    vec![describe(lat, h)],
                    None,
                    "level-3 permutable but not σ-subnormal",
                )
            })
            .collect(),
        ClaimId::L1 => lemma1(ctx, an),
        ClaimId::L2 => lemma2(lat, an),
        ClaimId::L4 => lemma4(lat, an),
        ClaimId::L5 => lemma5(lat, an),
        ClaimId::Conj1 => conjecture1(lat, an),
        ClaimId::C1 | ClaimId::C2 | ClaimId::C4 | ClaimId::C5 | ClaimId::C6 | ClaimId::C7 => {
            return None
        }
    })
}

fn levels_agree(
    lat: &SubgroupLattice,
    an: &SigmaAnalysis<'_>,
    levels: &[PermutabilityLevel],
    subjects: &[usize],
) -> Vec<WitnessRecord> {
    subjects
        .iter()
        .filter(|&&h| {
            let first = an.is_permutable(h, levels[0]);
            levels.iter().any(|&l| an.is_permutable(h, l) != first)
        })
        .map(|&h| {
            let mut block = None;
            let parts: Vec<String> = levels
                .iter()
                .map(|&l| {
                    let (b, text) = outcome_text(lat, an.outcome(h, l));
                    block = block.take().or(b);
                    format!("level {l}: {text}")
                })
                .collect();
            witness(vec![describe(lat, h)], block, parts.join("; "))
        })
        .collect()
}

/// `H^G/H_G` is σ-nilpotent for every `H` in `set`.
fn sections_nilpotent(
    ctx: &GroupContext,
    an: &SigmaAnalysis<'_>,
    set: &[bool],
) -> Vec<WitnessRecord> {
    let lat = ctx.lattice();
    let mut out = Vec::new();
    for h in (0..lat.len()).filter(|&h| set[h]) {
        let core = lat.core(h);
        let closure = lat.normal_closure(h);
        let q = ctx.quotient(core);
        let image = q.quotient.image_members(lat.members(closure));
        let nilpotent = sigma_nilpotent_members(q.quotient.group(), &image, an.sigma())
            .expect("σ covers every section of G");
        if !nilpotent {
            out.push(witness(
                vec![
                    describe(lat, h),
                    describe(lat, closure),
                    describe(lat, core),
                ],
                None,
                format!("H^G/H_G of order {} is not σ-nilpotent", image.len()),
            ));
        }
    }
    out
}

/// For σ-nilpotent `H`: `H` in `set` iff every `O_{π_i}(H)` is in `set`.
fn hall_parts(lat: &SubgroupLattice, an: &SigmaAnalysis<'_>, set: &[bool]) -> Vec<WitnessRecord> {
    let mut out = Vec::new();
    for h in (0..lat.len()).filter(|&h| an.is_sigma_nilpotent_subgroup(h)) {
        let parts: Vec<(String, usize)> = an
            .sigma()
            .blocks()
            .iter()
            .map(|b| (b.to_string(), o_pi_in(lat, h, b)))
            .collect();
        let all_parts = parts.iter().all(|&(_, p)| set[p]);
        if set[h] != all_parts {
            let bad = parts.iter().find(|&&(_, p)| !set[p]);
            let mut subgroups = vec![describe(lat, h)];
            subgroups.extend(parts.iter().map(|&(_, p)| describe(lat, p)));
            out.push(witness(
                subgroups,
                bad.map(|(b, _)| b.clone()),
                format!(
                    "H permutable: {}, all Hall parts permutable: {}",
                    set[h], all_parts
                ),
            ));
        }
    }
    out
}

/// `set` is closed under intersection and join.
fn sublattice(lat: &SubgroupLattice, set: &[bool]) -> Vec<WitnessRecord> {
    let members: Vec<usize> = (0..lat.len()).filter(|&h| set[h]).collect();
    let mut out = Vec::new();
    for (i, &a) in members.iter().enumerate() {
        for &b in &members[i + 1..] {
            for (name, m) in [
                ("intersection", lat.intersect(a, b)),
                ("join", lat.join(a, b)),
            ] {
                if !set[m] {
                    out.push(witness(
                        vec![describe(lat, a), describe(lat, b)],
                        None,
                        format!("{name} {} is not permutable", describe(lat, m)),
                    ));
                }
            }
        }
    }
    out
}

/// `N_G(H)` is in `set` whenever `H` is.
fn normalizers(lat: &SubgroupLattice, set: &[bool]) -> Vec<WitnessRecord> {
    (0..lat.len())
        .filter(|&h| set[h] && !set[lat.normalizer(h)])
        .map(|h| {
            witness(
                vec![describe(lat, h)],
                None,
                format!(
                    "normalizer {} is not permutable",
                    describe(lat, lat.normalizer(h))
                ),
            )
        })
        .collect()
}

/// Every subgroup has the D_π property for every block.
fn d_pi_everywhere(lat: &SubgroupLattice, an: &SigmaAnalysis<'_>) -> bool {
    an.skiba_defined()
        && (0..lat.len()).all(|k| {
            an.sigma()
                .blocks()
                .iter()
                .all(|b| has_d_pi_property_in(lat, k, b))
        })
}

/// Permutability of `H` at levels 2 and 3 transfers to `HN/N` in `G/N` and back
/// for `H ≥ N`.
fn lemma1(ctx: &GroupContext, an: &SigmaAnalysis<'_>) -> Vec<WitnessRecord> {
    let lat = ctx.lattice();
    let mut out = Vec::new();
    for n in lat.normal_subgroups() {
        if n == lat.trivial() {
            continue;
        }
        let q = ctx.quotient(n);
        let qlat = q.lattice();
        let qsigma = an.sigma().restrict(&prime_support(qlat.group().order()));
        let qan = SigmaAnalysis::new(qlat, qsigma).expect("restricted σ is canonical for G/N");
        for level in [Two, Three] {
            for h in 0..lat.len() {
                let image = qlat
                    .index_of(&q.quotient.image_members(lat.members(h)))
                    .expect("image of a subgroup is a subgroup");
                let in_g = an.is_permutable(h, level);
                let in_q = qan.is_permutable(image, level);
                let problem = if in_g && !in_q {
                    Some("H is permutable in G but HN/N is not in G/N")
                } else if !in_g && in_q && lat.is_subgroup(n, h) {
                    Some("HN/N is permutable in G/N but H >= N is not in G")
                } else {
                    None
                };
                if let Some(p) = problem {
                    out.push(witness(
                        vec![describe(lat, h), describe(lat, n), describe(qlat, image)],
                        None,
                        format!("level {level}: {p}"),
                    ));
                }
            }
        }
    }
    out
}

fn subnormal_set(lat: &SubgroupLattice, an: &SigmaAnalysis<'_>) -> Vec<usize> {
    (0..lat.len()).filter(|&h| an.is_subnormal(h)).collect()
}

/// For σ-subnormal `H`: `H ∩ K` is σ-subnormal in `K`, and `O^{π_i}(H) = O^{π_i}(G)`
/// when `|G : H|` is a π_i-number.
fn lemma2(lat: &SubgroupLattice, an: &SigmaAnalysis<'_>) -> Vec<WitnessRecord> {
    let subnormal = subnormal_set(lat, an);
    let mut out = Vec::new();
    for k in 0..lat.len() {
        let in_k = sigma_subnormal_set_in(lat, k, an.sigma());
        for &h in &subnormal {
            let m = lat.intersect(h, k);
            if !in_k[m] {
                out.push(witness(
                    vec![describe(lat, h), describe(lat, k)],
                    None,
                    format!("H ∩ K = {} is not σ-subnormal in K", describe(lat, m)),
                ));
            }
        }
    }
    let g_order = lat.group().order();
    for &h in &subnormal {
        for b in an.sigma().blocks() {
            if !is_pi_number(g_order / lat.order(h), b) {
                continue;
            }
            let (oh, og) = (o_upper_pi_in(lat, h, b), o_upper_pi(lat, b));
            if oh != og {
                out.push(witness(
                    vec![describe(lat, h)],
                    Some(b.to_string()),
                    format!(
                        "O^pi(H) = {} but O^pi(G) = {}",
                        describe(lat, oh),
                        describe(lat, og)
                    ),
                ));
            }
        }
    }
    out
}

/// A σ-subnormal π_i-subgroup lies in `O_{π_i}(G)`.
fn lemma4(lat: &SubgroupLattice, an: &SigmaAnalysis<'_>) -> Vec<WitnessRecord> {
    let mut out = Vec::new();
    for h in subnormal_set(lat, an) {
        for b in an.sigma().blocks() {
            let o = o_pi(lat, b);
            if is_pi_number(lat.order(h), b) && !lat.is_subgroup(h, o) {
                out.push(witness(
                    vec![describe(lat, h)],
                    Some(b.to_string()),
                    format!("not contained in O_pi(G) = {}", describe(lat, o)),
                ));
            }
        }
    }
    out
}

/// For level-3 `H`: `O^{π_i}(G) ≤ N_G(O_{π_i}(H))`.
fn lemma5(lat: &SubgroupLattice, an: &SigmaAnalysis<'_>) -> Vec<WitnessRecord> {
    let mut out = Vec::new();
    for h in (0..lat.len()).filter(|&h| an.is_permutable(h, Three)) {
        for b in an.sigma().blocks() {
            let upper = o_upper_pi(lat, b);
            let norm = lat.normalizer(o_pi_in(lat, h, b));
            if !lat.is_subgroup(upper, norm) {
                out.push(witness(
                    vec![describe(lat, h), describe(lat, o_pi_in(lat, h, b))],
                    Some(b.to_string()),
                    format!(
                        "O^pi(G) = {} is not in the normalizer {}",
                        describe(lat, upper),
                        describe(lat, norm)
                    ),
                ));
            }
        }
    }
    out
}

/// Level-2 subgroups that are not level-1, with full element lists.
fn conjecture1(lat: &SubgroupLattice, an: &SigmaAnalysis<'_>) -> Vec<WitnessRecord> {
    (0..lat.len())
        .filter(|&h| an.is_permutable(h, Two) && !an.is_permutable(h, One))
        .map(|h| match an.outcome(h, One) {
            Permutability::Fails(w) => witness(
                vec![list_elements(lat, h)],
                Some(w.block.to_string()),
                list_elements(lat, w.subgroup),
            ),
            other => unreachable!("level 1 failed without a witness: {other:?}"),
        })
        .collect()
}
