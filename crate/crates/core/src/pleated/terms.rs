use std::f64::consts::PI;

use super::prism::PrismDecomposition;
use crate::harness::fd::{fd_from_samples, unwrap_samples, FdEstimate, FdOptions};
use crate::harness::{DeformationFamily, SubCheck, EXACT_TOL};
use crate::kernel::compensated_sum;
use crate::schlafli::{edge_data, Polyhedron};
use crate::tracks::{cocycle_eval, cocycle_length, Branch, TrainTrack, TransverseCocycle};
use crate::{Error, Result};

/// Tolerance for identities that involve derivative estimates.
pub const RATE_TOL: f64 = 1e-7;

/// Pyramid edges in local order `y p q s r`:
/// `pq, rs, py, qy, ry, sy, pr, qs`.
const PYRAMID_EDGES: [(usize, usize); 8] = [(1, 2), (3, 4), (0, 1), (0, 2), (0, 4), (0, 3), (1, 4), (2, 3)];
/// Tetrahedron edges in local order `x y p q`: `pq, xy, px, qx, py, qy`.
const TET_EDGES: [(usize, usize); 6] = [(2, 3), (0, 1), (0, 2), (0, 3), (1, 2), (1, 3)];

const PQ: usize = 0;
const RS: usize = 1;
const PY: usize = 2;
const QY: usize = 3;
const RY: usize = 4;
const SY: usize = 5;
const PR: usize = 6;
const QS: usize = 7;
const T_PQ: usize = 0;
const T_XY: usize = 1;
const T_PX: usize = 2;
const T_QX: usize = 3;
const T_PY: usize = 4;
const T_QY: usize = 5;

fn edge_values<const N: usize>(p: &Polyhedron, edges: &[(usize, usize); N]) -> Result<[(f64, f64); N]> {
    let data = edge_data(p)?;
    let mut out = [(0.0, 0.0); N];
    for (slot, e) in out.iter_mut().zip(edges) {
        let d = data
            .iter()
            .find(|d| d.edge == *e)
            .ok_or_else(|| Error::Degenerate(format!("piece has no edge {e:?}")))?;
        *slot = (d.length, d.external_angle);
    }
    Ok(out)
}

/// Lengths and external angles of every pyramid and tetrahedron edge, with
/// the orientation signs of the pieces.
struct PieceData {
    pyramid: Vec<[(f64, f64); 8]>,
    tet: Vec<[(f64, f64); 6]>,
    signs: Vec<(f64, f64)>,
}

impl PieceData {
    fn of(d: &PrismDecomposition) -> Result<Self> {
        let n = d.component_count();
        let mut out = PieceData { pyramid: Vec::with_capacity(n), tet: Vec::with_capacity(n), signs: Vec::with_capacity(n) };
        for k in 0..n {
            out.pyramid.push(edge_values(&d.pyramid_polyhedron(k)?, &PYRAMID_EDGES)?);
            out.tet.push(edge_values(&d.tet_polyhedron(k)?, &TET_EDGES)?);
            out.signs.push((d.pyramid_sign(k), d.tet_sign(k)));
        }
        Ok(out)
    }

    fn angles(&self) -> Vec<f64> {
        let p = self.pyramid.iter().flat_map(|a| a.iter().map(|x| x.1));
        let t = self.tet.iter().flat_map(|a| a.iter().map(|x| x.1));
        p.chain(t).collect()
    }
}

/// Samples `f` along the family on the stencil of `opts` and returns its
/// value at `t0` with the derivative of each entry. Angles are unwrapped
/// when `angles` is set.
pub(crate) fn sample_rates<T: 'static>(
    family: &DeformationFamily<T>,
    t0: f64,
    opts: &FdOptions,
    angles: bool,
    f: impl Fn(&T) -> Result<Vec<f64>>,
) -> Result<(Vec<f64>, Vec<FdEstimate>)> {
    family.check_stencil(t0, opts)?;
    let mut samples = opts
        .sample_points(t0)
        .into_iter()
        .map(|t| family.at(t).and_then(|x| f(&x)))
        .collect::<Result<Vec<_>>>()?;
    if samples.windows(2).any(|w| w[0].len() != w[1].len()) {
        return Err(Error::Precondition("combinatorics change along the family".into()));
    }
    if angles {
        unwrap_samples(&mut samples)?;
    }
    let rates = fd_from_samples(&samples, opts)?;
    Ok((samples.swap_remove(0), rates))
}

/// Edge terms `½ σ l θ̇` of one panel's pyramid and tetrahedron, where `σ`
/// is the orientation sign of the piece.
#[derive(Debug, Clone, PartialEq)]
pub struct ComponentTerms {
    pub pyramid_lengths: [f64; 8],
    /// `σ θ̇` at each pyramid edge, in the order `pq rs py qy ry sy pr qs`.
    pub pyramid_rates: [f64; 8],
    pub tet_lengths: [f64; 6],
    /// `σ θ̇` at each tetrahedron edge, in the order `pq xy px qx py qy`.
    pub tet_rates: [f64; 6],
    pub radius: Option<u32>,
}

impl ComponentTerms {
    fn p(&self, e: usize) -> f64 {
        0.5 * self.pyramid_lengths[e] * self.pyramid_rates[e]
    }

    fn t(&self, e: usize) -> f64 {
        0.5 * self.tet_lengths[e] * self.tet_rates[e]
    }

    /// Pyramid base edge on the bottom, `p q`.
    pub fn pyramid_bottom(&self) -> f64 {
        self.p(PQ)
    }

    /// Pyramid base edge on the top, `r s`.
    pub fn pyramid_top(&self) -> f64 {
        self.p(RS)
    }

    /// Pyramid edges `p y`, `q y`.
    pub fn pyramid_apex_bottom(&self) -> f64 {
        self.p(PY) + self.p(QY)
    }

    /// Pyramid edges `r y`, `s y`.
    pub fn pyramid_apex_top(&self) -> f64 {
        self.p(RY) + self.p(SY)
    }

    /// Pyramid edges along the leaves, `p r` and `q s`.
    pub fn pyramid_leaf(&self) -> f64 {
        self.p(PR) + self.p(QS)
    }

    pub fn tet_base(&self) -> f64 {
        self.t(T_PQ)
    }

    pub fn tet_axis(&self) -> f64 {
        self.t(T_XY)
    }

    pub fn tet_x(&self) -> f64 {
        self.t(T_PX) + self.t(T_QX)
    }

    pub fn tet_y(&self) -> f64 {
        self.t(T_PY) + self.t(T_QY)
    }

    pub fn groups(&self) -> [f64; 9] {
        [
            self.pyramid_bottom(),
            self.pyramid_top(),
            self.pyramid_apex_bottom(),
            self.pyramid_apex_top(),
            self.pyramid_leaf(),
            self.tet_base(),
            self.tet_axis(),
            self.tet_x(),
            self.tet_y(),
        ]
    }
}

pub const GROUP_NAMES: [&str; 9] = [
    "pyramid_bottom",
    "pyramid_top",
    "pyramid_apex_bottom",
    "pyramid_apex_top",
    "pyramid_leaf",
    "tet_base",
    "tet_axis",
    "tet_x",
    "tet_y",
];

#[derive(Debug, Clone, PartialEq)]
pub struct GroupedTerms {
    pub components: Vec<ComponentTerms>,
}

impl GroupedTerms {
    /// Each group summed over the components, named as in `GROUP_NAMES`.
    pub fn sums(&self) -> Vec<(&'static str, f64)> {
        (0..9)
            .map(|g| (GROUP_NAMES[g], compensated_sum(self.components.iter().map(|c| c.groups()[g]))))
            .collect()
    }

    pub fn total(&self) -> f64 {
        compensated_sum(self.components.iter().flat_map(|c| c.groups()))
    }
}

/// Schläfli terms of every pyramid and tetrahedron, grouped by edge type.
/// Their total is the derivative of the chain volume.
pub fn grouped_term_sums(family: &DeformationFamily<PrismDecomposition>, t0: f64, opts: &FdOptions) -> Result<GroupedTerms> {
    let base = family.at(t0)?;
    let data = PieceData::of(&base)?;
    let (_, rates) = sample_rates(family, t0, opts, true, |d| {
        let pd = PieceData::of(d)?;
        if pd.signs != data.signs {
            return Err(Error::Degenerate("a piece changes orientation along the family".into()));
        }
        Ok(pd.angles())
    })?;
    let n = base.component_count();
    let components = (0..n)
        .map(|k| {
            let (sp, st) = data.signs[k];
            ComponentTerms {
                pyramid_lengths: data.pyramid[k].map(|x| x.0),
                pyramid_rates: std::array::from_fn(|e| sp * rates[8 * k + e].value),
                tet_lengths: data.tet[k].map(|x| x.0),
                tet_rates: std::array::from_fn(|e| st * rates[8 * n + 6 * k + e].value),
                radius: base.radii.as_ref().map(|r| r[k]),
            }
        })
        .collect();
    Ok(GroupedTerms { components })
}

/// Fan bend angles at `y B_j` read off the two pyramids meeting there:
/// `π` minus the signed sum of their internal angles.
fn fan_bends_from_pyramids(data: &PieceData) -> Vec<f64> {
    (1..data.pyramid.len())
        .map(|j| {
            let (s0, _) = data.signs[j - 1];
            let (s1, _) = data.signs[j];
            PI - s0 * (PI - data.pyramid[j - 1][QY].1) - s1 * (PI - data.pyramid[j][PY].1)
        })
        .collect()
}

fn wrap_abs(x: f64) -> f64 {
    let y = x.rem_euclid(2.0 * PI);
    y.min(2.0 * PI - y)
}

#[derive(Debug, Clone, PartialEq)]
pub struct FanIdentityReport {
    pub checks: Vec<SubCheck>,
    /// Length of the fan bending derivative, computed directly from the fan.
    pub fan_length: f64,
    pub pass: bool,
}

/// Checks the finite identities linking the pyramid and tetrahedron terms
/// to the fan from `y`:
///
/// - the internal angles of the tetrahedra at `x y` add up to the angle of
///   the boundary there, mod 2π;
/// - the lengths `l(q y)` telescope over the panels to the right;
/// - the length of the fan bending derivative agrees whether computed from
///   the fan itself, from gap arcs, or from the pyramid edge rates;
/// - the apex edges `p y`, `q y` of pyramids and tetrahedra cancel except
///   at the two ends of the bottom side.
pub fn fan_identity_check(
    family: &DeformationFamily<PrismDecomposition>,
    t0: f64,
    opts: &FdOptions,
) -> Result<FanIdentityReport> {
    let base = family.at(t0)?;
    let n = base.component_count();
    let data = PieceData::of(&base)?;
    let g = grouped_term_sums(family, t0, opts)?;
    let mut checks = Vec::new();

    let surface = base.surface()?;
    let edges = surface.edge_data()?;
    let angle_at = |a: usize, b: usize| {
        edges
            .iter()
            .find(|e| e.edge == (a.min(b), a.max(b)))
            .map(|e| (e.length, e.external_angle))
            .ok_or_else(|| Error::Degenerate(format!("surface has no edge ({a}, {b})")))
    };
    let (_, theta_xy) = angle_at(base.x(), base.y())?;
    let internal = compensated_sum((0..n).map(|k| data.signs[k].1 * (PI - data.tet[k][T_XY].1)));
    checks.push(SubCheck::within("angle_telescope", wrap_abs(PI - theta_xy - internal), EXACT_TOL));

    let py: Vec<f64> = data.pyramid.iter().map(|p| p[PY].0).collect();
    let qy: Vec<f64> = data.pyramid.iter().map(|p| p[QY].0).collect();
    let worst = (0..n)
        .map(|k| {
            let tail = compensated_sum((k + 1..n).map(|j| py[j] - qy[j]));
            (qy[k] - (tail + qy[n - 1])).abs()
        })
        .fold(0.0, f64::max);
    checks.push(SubCheck::within("length_telescope", worst, EXACT_TOL));

    let direct = base.fan().bends()?;
    let from_pyramids = fan_bends_from_pyramids(&data);
    let bend_gap = direct.iter().zip(&from_pyramids).map(|(a, b)| wrap_abs(a - b)).fold(0.0, f64::max);
    checks.push(SubCheck::within("fan_bends_from_pyramids", bend_gap, EXACT_TOL));

    let (_, fan_rates) = sample_rates(family, t0, opts, true, |d| d.fan().bends())?;
    let fan_dot = TransverseCocycle::real(fan_rates.iter().map(|r| r.value).collect());
    let fan_track =
        TrainTrack::new(base.fan().leaf_lengths().into_iter().map(Branch::segment).collect(), Vec::new())?;
    let fan_length = cocycle_length(&fan_track, &fan_dot)?;
    let whole: Vec<usize> = (0..n - 1).collect();
    let mut gap_terms = Vec::with_capacity(n + 1);
    for k in 0..n {
        let crossed: Vec<usize> = (0..k).collect();
        gap_terms.push(cocycle_eval(&fan_track, &fan_dot, &crossed)? * (py[k] - qy[k]));
    }
    gap_terms.push(cocycle_eval(&fan_track, &fan_dot, &whole)? * qy[n - 1]);
    let gap_length = compensated_sum(gap_terms);
    let c = &g.components;
    let pyramid_length = compensated_sum(
        c.iter()
            .flat_map(|t| [t.pyramid_lengths[PY] * t.pyramid_rates[PY], t.pyramid_lengths[QY] * t.pyramid_rates[QY]])
            .chain([
                -c[0].pyramid_lengths[PY] * c[0].pyramid_rates[PY],
                -c[n - 1].pyramid_lengths[QY] * c[n - 1].pyramid_rates[QY],
            ]),
    );
    checks.push(SubCheck::within("fan_length_vs_pyramids", fan_length - pyramid_length, RATE_TOL));
    checks.push(SubCheck::within("fan_length_vs_gap_arcs", fan_length - gap_length, RATE_TOL));

    let (y, b0, bn) = (base.y(), base.b(0), base.b(n));
    let (_, ends) = sample_rates(family, t0, opts, true, |d| {
        let e = d.surface()?.edge_data()?;
        [(y.min(b0), y.max(b0)), (y.min(bn), y.max(bn))]
            .iter()
            .map(|key| {
                e.iter().find(|x| x.edge == *key).map(|x| x.external_angle).ok_or_else(|| {
                    Error::Degenerate(format!("surface has no edge {key:?}"))
                })
            })
            .collect()
    })?;
    let (l0, _) = angle_at(y, b0)?;
    let (ln, _) = angle_at(y, bn)?;
    let apex_pairs = compensated_sum(c.iter().flat_map(|t| [t.pyramid_apex_bottom(), t.tet_y()]));
    let boundary = 0.5 * (l0 * ends[0].value + ln * ends[1].value);
    checks.push(SubCheck::within("apex_pair_cancellation", apex_pairs - boundary, RATE_TOL));

    let pass = checks.iter().all(|c| c.pass);
    Ok(FanIdentityReport { checks, fan_length, pass })
}
