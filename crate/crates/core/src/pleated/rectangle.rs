use num_complex::Complex64;

use crate::kernel::{
    det4, geodesic_through, mink_cross, mink_inner, normalize_spacelike, Geodesic, Isometry, Point, Vec4, Vertex,
};
use crate::tracks::{cocycle_eval, Branch, Ring, TrainTrack, TransverseCocycle};
use crate::{Error, Result};

/// Distance from the chart plane, or from a side, tolerated for chart points.
pub const CHART_TOL: f64 = 1e-9;

/// Orientation of the rotation about each leaf. With this choice the panel
/// after a leaf is turned so that the surface external angle there equals
/// the bend angle.
const BEND_SIGN: f64 = 1.0;

/// A leaf segment of the chart, joining the bottom side to the top side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Leaf {
    pub bottom: Point,
    pub top: Point,
    /// Arc-length fractions along the bottom (P to Q) and top (R to S) sides.
    pub bottom_frac: f64,
    pub top_frac: f64,
}

impl Leaf {
    pub fn length(&self) -> f64 {
        self.bottom.dist(&self.top)
    }
}

/// A rectangle `P Q S R` in a totally geodesic plane, crossed from bottom
/// (`P Q`) to top (`R S`) by disjoint leaves, and bent along leaf `j` by
/// `bends[j]`. Panel `k` lies between leaf `k - 1` and leaf `k`; panel 0
/// touches the side `P R`, the last panel the side `Q S`.
#[derive(Debug, Clone)]
pub struct PleatedRectangle {
    /// Chart corners `[P, Q, R, S]`.
    pub corners: [Point; 4],
    pub leaves: Vec<Leaf>,
    pub bends: Vec<f64>,
    normal: Vec4,
    motions: Vec<Isometry>,
}

/// Point at arc-length fraction `s` along the segment `a b`.
pub fn segment_point(a: &Point, b: &Point, s: f64) -> Result<Point> {
    let g = geodesic_through(&Vertex::Finite(*a), &Vertex::Finite(*b))?;
    Ok(g.point_at(g.project(a) + s * a.dist(b)))
}

fn segment_fraction(a: &Point, b: &Point, p: &Point) -> Result<f64> {
    let g = geodesic_through(&Vertex::Finite(*a), &Vertex::Finite(*b))?;
    if g.distance_to(p) > CHART_TOL {
        return Err(Error::OutsideChart(format!("leaf end at distance {:e} from its side", g.distance_to(p))));
    }
    Ok((g.project(p) - g.project(a)) / a.dist(b))
}

fn increasing(xs: &[f64]) -> bool {
    xs.iter().all(|&x| x > 0.0 && x < 1.0) && xs.windows(2).all(|w| w[0] < w[1])
}

impl PleatedRectangle {
    /// Leaves given by their end points on the bottom and top sides.
    pub fn new(corners: [Point; 4], ends: &[(Point, Point)], bends: Vec<f64>) -> Result<Self> {
        if ends.len() != bends.len() {
            return Err(Error::IndexMismatch(format!("{} leaves, {} bend angles", ends.len(), bends.len())));
        }
        let [p, q, r, s] = corners;
        let normal = normalize_spacelike(&mink_cross(p.coords(), q.coords(), r.coords()))
            .ok_or_else(|| Error::Degenerate("rectangle corners are collinear".into()))?;
        let off = mink_inner(&normal, s.coords()).asinh().abs();
        if off > CHART_TOL {
            return Err(Error::Degenerate(format!("corner S is {off:e} off the plane of P Q R")));
        }
        let mut leaves = Vec::with_capacity(ends.len());
        for (b, t) in ends {
            for x in [b, t] {
                if mink_inner(&normal, x.coords()).asinh().abs() > CHART_TOL {
                    return Err(Error::OutsideChart("leaf end off the chart plane".into()));
                }
            }
            leaves.push(Leaf {
                bottom: *b,
                top: *t,
                bottom_frac: segment_fraction(&p, &q, b)?,
                top_frac: segment_fraction(&r, &s, t)?,
            });
        }
        let bf: Vec<f64> = leaves.iter().map(|l| l.bottom_frac).collect();
        let tf: Vec<f64> = leaves.iter().map(|l| l.top_frac).collect();
        if !increasing(&bf) || !increasing(&tf) {
            return Err(Error::Precondition("leaves must be ordered, disjoint and inside the sides".into()));
        }
        let mut motions = vec![Isometry::identity()];
        for (leaf, beta) in leaves.iter().zip(&bends) {
            let axis = geodesic_through(&Vertex::Finite(leaf.bottom), &Vertex::Finite(leaf.top))?;
            let turn = crate::kernel::screw_motion(&axis, Complex64::new(0.0, BEND_SIGN * beta));
            let last = motions.last().expect("motions start with the identity");
            motions.push(last.compose(&turn));
        }
        Ok(PleatedRectangle { corners, leaves, bends, normal, motions })
    }

    /// Leaves given by arc-length fractions `(bottom, top)` along the sides.
    pub fn from_fractions(corners: [Point; 4], fracs: &[(f64, f64)], bends: Vec<f64>) -> Result<Self> {
        let [p, q, r, s] = corners;
        let ends = fracs
            .iter()
            .map(|&(a, c)| Ok((segment_point(&p, &q, a)?, segment_point(&r, &s, c)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(corners, &ends, bends)
    }

    pub fn leaf_count(&self) -> usize {
        self.leaves.len()
    }

    pub fn panel_count(&self) -> usize {
        self.leaves.len() + 1
    }

    /// Unit normal of the chart plane.
    pub fn chart_normal(&self) -> &Vec4 {
        &self.normal
    }

    /// Isometry carrying panel `k` of the chart to its image.
    pub fn panel_motion(&self, k: usize) -> &Isometry {
        &self.motions[k]
    }

    /// Chart points `B_0 = P, B_1, ..., B_{n+1} = Q` along the bottom.
    pub fn bottom_chart(&self) -> Vec<Point> {
        let mut v = vec![self.corners[0]];
        v.extend(self.leaves.iter().map(|l| l.bottom));
        v.push(self.corners[1]);
        v
    }

    /// Chart points `T_0 = R, ..., T_{n+1} = S` along the top.
    pub fn top_chart(&self) -> Vec<Point> {
        let mut v = vec![self.corners[2]];
        v.extend(self.leaves.iter().map(|l| l.top));
        v.push(self.corners[3]);
        v
    }

    fn images(&self, chart: Vec<Point>) -> Vec<Point> {
        let last = chart.len() - 1;
        chart.iter().enumerate().map(|(k, p)| self.motions[k.min(last - 1)].apply_point(p)).collect()
    }

    /// Images of `B_0, ..., B_{n+1}`.
    pub fn bottom_images(&self) -> Vec<Point> {
        self.images(self.bottom_chart())
    }

    /// Images of `T_0, ..., T_{n+1}`.
    pub fn top_images(&self) -> Vec<Point> {
        self.images(self.top_chart())
    }

    /// Image of leaf `j` as a full geodesic.
    pub fn leaf_geodesic(&self, j: usize) -> Result<Geodesic> {
        let m = &self.motions[j + 1];
        let l = &self.leaves[j];
        geodesic_through(&Vertex::Finite(m.apply_point(&l.bottom)), &Vertex::Finite(m.apply_point(&l.top)))
    }

    // side of u relative to the plane through a, b perpendicular to the chart
    fn side(&self, a: &Point, b: &Point, u: &Vec4) -> f64 {
        det4(a.coords(), b.coords(), &self.normal, u)
    }

    /// Index of the panel containing the chart point `u`.
    pub fn panel_of(&self, u: &Point) -> Result<usize> {
        if mink_inner(&self.normal, u.coords()).asinh().abs() > CHART_TOL {
            return Err(Error::OutsideChart("point is off the chart plane".into()));
        }
        let [p, q, r, s] = self.corners;
        let x = u.coords();
        let inside = |a: &Point, b: &Point, inner: &Point| {
            let su = self.side(a, b, x);
            let si = self.side(a, b, inner.coords());
            let scale = self.side(a, b, inner.coords()).abs();
            su * si.signum() >= -CHART_TOL * scale
        };
        if !(inside(&p, &q, &r) && inside(&r, &s, &p) && inside(&p, &r, &q) && inside(&q, &s, &p)) {
            return Err(Error::OutsideChart("point is outside the rectangle".into()));
        }
        Ok(self
            .leaves
            .iter()
            .filter(|l| {
                let su = self.side(&l.bottom, &l.top, x);
                let sq = self.side(&l.bottom, &l.top, q.coords());
                su * sq.signum() > 0.0
            })
            .count())
    }

    /// Image of a chart point under the pleated map.
    pub fn pleat_eval(&self, u: &Point) -> Result<Point> {
        let k = self.panel_of(u)?;
        Ok(self.motions[k].apply_point(u))
    }

    /// One branch per leaf, with the leaf length; leaves meet no switches.
    pub fn leaf_track(&self) -> TrainTrack {
        let branches = self.leaves.iter().map(|l| Branch::segment(l.length())).collect();
        TrainTrack::new(branches, Vec::new()).expect("leaf track has no switches")
    }

    /// Bend angles as a circle-valued cocycle, stored as real lifts.
    pub fn bend_cocycle(&self) -> TransverseCocycle {
        TransverseCocycle::new(self.bends.clone(), Ring::Circle)
    }

    /// Leaves crossed by the bottom sub-arc between fractions `s0` and `s1`.
    pub fn crossings(&self, s0: f64, s1: f64) -> Result<Vec<usize>> {
        if !(0.0..=1.0).contains(&s0) || !(0.0..=1.0).contains(&s1) {
            return Err(Error::OutsideChart(format!("arc [{s0}, {s1}] leaves the bottom side")));
        }
        let (lo, hi) = (s0.min(s1), s0.max(s1));
        let mut out = Vec::new();
        for (j, l) in self.leaves.iter().enumerate() {
            if (l.bottom_frac - s0).abs() <= 1e-12 || (l.bottom_frac - s1).abs() <= 1e-12 {
                return Err(Error::Precondition(format!("arc end point lies on leaf {j}")));
            }
            if lo < l.bottom_frac && l.bottom_frac < hi {
                out.push(j);
            }
        }
        Ok(out)
    }

    /// Real lift of the bending along the bottom sub-arc from `s0` to `s1`,
    /// negated when the arc runs from Q toward P.
    pub fn bending_cocycle_eval(&self, s0: f64, s1: f64) -> Result<f64> {
        let crossed = self.crossings(s0, s1)?;
        let v = cocycle_eval(&self.leaf_track(), &self.bend_cocycle(), &crossed)?;
        Ok(if s1 < s0 { -v } else { v })
    }
}
