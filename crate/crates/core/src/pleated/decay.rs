use std::collections::BTreeMap;

use super::prism::{prism_decompose, PrismDecomposition, APEX_FLOOR};
use super::rectangle::PleatedRectangle;
use super::terms::grouped_term_sums;
use crate::harness::{DeformationFamily, FdOptions};
use crate::kernel::Point;
use crate::tracks::{radius_histogram, RectangleComponent};
use crate::Result;

/// Rectangles in the vertical half-plane over the real axis of the upper
/// half-space. Leaves are vertical lines, all asymptotic at `∞`, at
/// `x = 0` and `x = ±w e^{-(m + 1/2) L}` for `m < depth`. The rectangle
/// `R_i` is the image of `R_0 = [-w, w] × [1, e^L]` under `z ↦ e^{-iL} z`;
/// two leaves run through `R_0, ..., R_{r-1}` together and then diverge,
/// which makes `r` the divergence radius of the gap between them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayConfig {
    pub width: f64,
    pub spacing: f64,
    pub depth: u32,
}

impl Default for DecayConfig {
    fn default() -> Self {
        DecayConfig { width: 1.0, spacing: 0.8, depth: 12 }
    }
}

fn uhs(x: f64, h: f64) -> Point {
    Point::from_upper_half_space(x, 0.0, h).expect("positive height")
}

impl DecayConfig {
    /// Leaf positions on the real axis, increasing.
    pub fn leaf_positions(&self) -> Vec<f64> {
        let pos: Vec<f64> =
            (0..self.depth).map(|m| self.width * (-(f64::from(m) + 0.5) * self.spacing).exp()).collect();
        let mut xs: Vec<f64> = pos.iter().map(|x| -x).collect();
        xs.push(0.0);
        xs.extend(pos.iter().rev());
        xs
    }

    /// Number of rectangles `R_0, R_1, ...` crossed by both vertical lines
    /// before one of them leaves.
    pub fn divergence_radius(&self, a: f64, b: f64) -> u32 {
        let crosses = |x: f64, i: u32| x.abs() <= self.width * (-f64::from(i) * self.spacing).exp() * (1.0 + 1e-12);
        (0..).take_while(|&i| i <= self.depth && crosses(a, i) && crosses(b, i)).count() as u32
    }

    /// `R_0` pleated along the leaves with the given bend angles, and the
    /// divergence radius of each panel.
    pub fn rectangle(&self, bends: Vec<f64>) -> Result<(PleatedRectangle, Vec<u32>)> {
        let w = self.width;
        let (hb, ht) = (1.0, self.spacing.exp());
        let (rb, rt) = ((w * w + hb * hb).sqrt(), (w * w + ht * ht).sqrt());
        let corners = [uhs(-w, hb), uhs(w, hb), uhs(-w, ht), uhs(w, ht)];
        let xs = self.leaf_positions();
        let ends: Vec<(Point, Point)> =
            xs.iter().map(|&x| (uhs(x, (rb * rb - x * x).sqrt()), uhs(x, (rt * rt - x * x).sqrt()))).collect();
        let rect = PleatedRectangle::new(corners, &ends, bends)?;
        let mut walls = vec![-w];
        walls.extend(&xs);
        walls.push(w);
        let radii = walls.windows(2).map(|p| self.divergence_radius(p[0], p[1]).max(1)).collect();
        Ok((rect, radii))
    }

    pub fn leaf_count(&self) -> usize {
        2 * self.depth as usize + 1
    }

    /// Bending family `β_j(t) = β_j + t β̇_j` with alternating signs, apexes
    /// off the plane of the rectangle.
    pub fn family(&self, base: f64, rate: f64) -> DeformationFamily<PrismDecomposition> {
        let cfg = *self;
        let n = self.leaf_count();
        DeformationFamily::new("decay", 0.05, Some(1), move |t| {
            let bends = (0..n).map(|j| if j % 2 == 0 { 1.0 } else { -1.0 } * (base + t * rate)).collect();
            let (rect, radii) = cfg.rectangle(bends)?;
            let x = Point::from_upper_half_space(0.3, 1.2, 0.8)?;
            let y = Point::from_upper_half_space(-0.2, 0.9, 2.2)?;
            let mut d = prism_decompose(&rect, x, y, APEX_FLOOR)?;
            d.radii = Some(radii);
            Ok(d)
        })
    }
}

/// Least-squares fit of `ln v ≈ ln c - a r`, then `c` raised so that
/// `v ≤ c e^{-a r}` holds at every sample.
pub fn fit_exponential(r: &[f64], v: &[f64]) -> (f64, f64) {
    let n = r.len() as f64;
    let ly: Vec<f64> = v.iter().map(|x| x.ln()).collect();
    let (mr, my) = (r.iter().sum::<f64>() / n, ly.iter().sum::<f64>() / n);
    let sxy: f64 = r.iter().zip(&ly).map(|(a, b)| (a - mr) * (b - my)).sum();
    let sxx: f64 = r.iter().map(|a| (a - mr) * (a - mr)).sum();
    let a = -sxy / sxx;
    let c = r.iter().zip(v).map(|(ri, vi)| vi * (a * ri).exp()).fold(0.0, f64::max);
    (a, c)
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecayReport {
    /// Largest gap length `l(p q)` at each radius.
    pub gap_by_radius: BTreeMap<u32, f64>,
    pub gap_rate: f64,
    pub gap_constant: f64,
    /// Gap lengths strictly decrease with the radius.
    pub gap_monotone: bool,
    /// Most components sharing one radius.
    pub max_per_radius: usize,
    /// Largest `|l(p y) θ̇(p y) + l(q y) θ̇(q y)|` of a pyramid at each radius.
    pub apex_term_by_radius: BTreeMap<u32, f64>,
    /// Rate `a` in the fit of the apex terms by `c r e^{-a r}`.
    pub apex_rate: f64,
    pub apex_constant: f64,
    pub apex_monotone: bool,
}

/// Gap lengths and pyramid apex terms against divergence radius. The
/// thinnest pieces make angle rates noisy below steps of a few `1e-3`. The two
/// end panels, which are bounded by the sides of the rectangle rather
/// than by a pair of leaves, are left out of the fits.
pub fn decay_diagnostics(cfg: &DecayConfig, t0: f64, opts: &FdOptions) -> Result<DecayReport> {
    let family = cfg.family(0.05, 1.0);
    let d = family.at(t0)?;
    let radii = d.radii.clone().expect("decay family records radii");
    let components: Vec<RectangleComponent> =
        radii.iter().enumerate().map(|(k, &r)| RectangleComponent::new(0, k, r)).collect::<Result<_>>()?;
    let max_per_radius = radius_histogram(&components).values().copied().max().unwrap_or(0);
    let terms = grouped_term_sums(&family, t0, opts)?;
    let n = d.component_count();
    let mut gap_by_radius = BTreeMap::new();
    let mut apex_term_by_radius = BTreeMap::new();
    for k in 1..n - 1 {
        let r = radii[k];
        let gap = d.vertices[d.b(k)].dist(&d.vertices[d.b(k + 1)]);
        let term = 2.0 * terms.components[k].pyramid_apex_bottom().abs();
        let g = gap_by_radius.entry(r).or_insert(0.0f64);
        *g = g.max(gap);
        let a = apex_term_by_radius.entry(r).or_insert(0.0f64);
        *a = a.max(term);
    }
    let rs: Vec<f64> = gap_by_radius.keys().map(|&r| f64::from(r)).collect();
    let gaps: Vec<f64> = gap_by_radius.values().copied().collect();
    let (gap_rate, gap_constant) = fit_exponential(&rs, &gaps);
    let gap_monotone = gaps.windows(2).all(|w| w[1] < w[0]);
    let scaled: Vec<f64> = apex_term_by_radius.iter().map(|(&r, &v)| v / f64::from(r)).collect();
    let (apex_rate, apex_constant) = fit_exponential(&rs, &scaled);
    let apex_monotone = apex_term_by_radius.values().collect::<Vec<_>>().windows(2).all(|w| w[1] < w[0]);
    Ok(DecayReport {
        gap_by_radius,
        gap_rate,
        gap_constant,
        gap_monotone,
        max_per_radius,
        apex_term_by_radius,
        apex_rate,
        apex_constant,
        apex_monotone,
    })
}
