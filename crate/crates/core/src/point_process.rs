//! Seeded Poisson and fixed-count uniform point sets in square regions.
//!
//! # Poisson counts
//!
//! [`poisson_count`] returns exact Poisson variates for every finite mean:
//!
//! * mean `< 10`: sequential inversion. Draw `u` uniform on `[0, 1)` and walk
//!   the cumulative distribution `F(j)` upward from `j = 0` until `u < F(j)`.
//! * mean `>= 10`: Hörmann's transformed rejection with squeeze (PTRS,
//!   *The transformed rejection method for generating Poisson random
//!   variables*, 1993). The acceptance test compares against the exact
//!   log-pmf, so the output distribution is exactly Poisson; no normal
//!   approximation is ever used.
//!
//! # Stream layout
//!
//! A point set with seed `s` draws positions from stream
//! [`POSITION_STREAM`](crate::rng::POSITION_STREAM) of `s` (x then y for each
//! point, in generation order) and its Poisson count from
//! [`COUNT_STREAM`](crate::rng::COUNT_STREAM). Hence
//! `sample_poisson(region, λ, s)` is exactly the first `N` points of
//! `sample_fixed(region, m, s)` for any `m >= N`.

use std::fmt::Write as _;
use std::io::{BufRead, Write};
use std::path::Path;

use rand::Rng;

use crate::error::{invalid, Error, Result};
use crate::rng::{self, COUNT_STREAM, POSITION_STREAM};

/// A point in the plane.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    #[inline]
    pub fn dist2(self, other: Point) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        dx * dx + dy * dy
    }

    #[inline]
    pub fn dist(self, other: Point) -> f64 {
        self.dist2(other).sqrt()
    }
}

/// Closed axis-aligned square `[origin_x, origin_x + side] x [origin_y, origin_y + side]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Region {
    pub origin_x: f64,
    pub origin_y: f64,
    pub side: f64,
}

impl Region {
    pub fn new(origin_x: f64, origin_y: f64, side: f64) -> Result<Self> {
        if !(side.is_finite() && side >= 0.0) || !origin_x.is_finite() || !origin_y.is_finite() {
            return Err(invalid(format!(
                "region needs finite origin and side >= 0, got ({origin_x}, {origin_y}) side {side}"
            )));
        }
        Ok(Self { origin_x, origin_y, side })
    }

    /// The square `[0, sqrt(n)]^2` of area `n`.
    pub fn square_of_area(n: f64) -> Result<Self> {
        if !(n.is_finite() && n >= 0.0) {
            return Err(invalid(format!("area must be finite and >= 0, got {n}")));
        }
        Self::new(0.0, 0.0, n.sqrt())
    }

    /// Square of side `side` centred on `center`.
    pub fn centered(center: Point, side: f64) -> Result<Self> {
        Self::new(center.x - side / 2.0, center.y - side / 2.0, side)
    }

    pub fn area(&self) -> f64 {
        self.side * self.side
    }

    pub fn center(&self) -> Point {
        Point::new(self.origin_x + self.side / 2.0, self.origin_y + self.side / 2.0)
    }

    pub fn max_x(&self) -> f64 {
        self.origin_x + self.side
    }

    pub fn max_y(&self) -> f64 {
        self.origin_y + self.side
    }

    /// Closed containment.
    pub fn contains(&self, p: Point) -> bool {
        p.x >= self.origin_x && p.x <= self.max_x() && p.y >= self.origin_y && p.y <= self.max_y()
    }

    /// Open containment (boundary excluded).
    pub fn contains_strictly(&self, p: Point) -> bool {
        p.x > self.origin_x && p.x < self.max_x() && p.y > self.origin_y && p.y < self.max_y()
    }

    pub fn diagonal(&self) -> f64 {
        self.side * std::f64::consts::SQRT_2
    }
}

/// An ordered sample of points inside a region.
///
/// Point order is generation order; index `i` labels the `i`-th point.
#[derive(Clone, Debug, PartialEq)]
pub struct PointSet {
    region: Region,
    points: Vec<Point>,
    seed: u64,
}

impl PointSet {
    /// Builds a point set from explicit coordinates. Every point must lie in
    /// the closed region.
    pub fn from_points(region: Region, points: Vec<Point>, seed: u64) -> Result<Self> {
        if let Some((i, p)) = points.iter().enumerate().find(|(_, p)| !region.contains(**p)) {
            return Err(invalid(format!("point {i} at ({}, {}) lies outside the region", p.x, p.y)));
        }
        Ok(Self { region, points, seed })
    }

    pub fn empty(region: Region, seed: u64) -> Self {
        Self { region, points: Vec::new(), seed }
    }

    pub fn region(&self) -> Region {
        self.region
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, i: usize) -> Point {
        self.points[i]
    }

    /// Sub-sample keeping `indices` in the given order, on a new region.
    pub fn subset(&self, region: Region, indices: &[usize]) -> Result<Self> {
        let points = indices
            .iter()
            .map(|&i| {
                self.points
                    .get(i)
                    .copied()
                    .ok_or_else(|| invalid(format!("index {i} out of range for {} points", self.len())))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_points(region, points, self.seed)
    }

    /// Appends points (used to plant constructed configurations).
    pub fn with_extra_points(&self, extra: &[Point]) -> Result<Self> {
        let mut points = self.points.clone();
        points.extend_from_slice(extra);
        Self::from_points(self.region, points, self.seed)
    }

    /// Writes the replay CSV: `# side=`, `# seed=` comment lines (plus
    /// `# origin=x,y` when the origin is not zero), an `x,y` header and one
    /// point per row with 17 significant digits.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        out.write_all(self.to_csv_string().as_bytes())?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut s = String::with_capacity(48 * (self.len() + 4));
        let _ = writeln!(s, "# side={}", fmt_real(self.region.side));
        let _ = writeln!(s, "# seed={}", self.seed);
        if self.region.origin_x != 0.0 || self.region.origin_y != 0.0 {
            let _ = writeln!(
                s,
                "# origin={},{}",
                fmt_real(self.region.origin_x),
                fmt_real(self.region.origin_y)
            );
        }
        s.push_str("x,y\n");
        for p in &self.points {
            let _ = writeln!(s, "{},{}", fmt_real(p.x), fmt_real(p.y));
        }
        s
    }

    pub fn save_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_csv_string())?;
        Ok(())
    }

    pub fn read_csv<R: BufRead>(input: R) -> Result<Self> {
        let mut side = None;
        let mut seed = 0u64;
        let mut origin = (0.0, 0.0);
        let mut points = Vec::new();
        let mut header_seen = false;
        for (lineno, line) in input.lines().enumerate() {
            let line = line?;
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let bad = |what: &str| Error::Parse(format!("line {}: {what}: {line:?}", lineno + 1));
            if let Some(comment) = line.strip_prefix('#') {
                let comment = comment.trim();
                if let Some(v) = comment.strip_prefix("side=") {
                    side = Some(v.parse::<f64>().map_err(|_| bad("bad side"))?);
                } else if let Some(v) = comment.strip_prefix("seed=") {
                    seed = v.parse::<u64>().map_err(|_| bad("bad seed"))?;
                } else if let Some(v) = comment.strip_prefix("origin=") {
                    let (ox, oy) = v.split_once(',').ok_or_else(|| bad("bad origin"))?;
                    origin = (
                        ox.parse().map_err(|_| bad("bad origin"))?,
                        oy.parse().map_err(|_| bad("bad origin"))?,
                    );
                }
                continue;
            }
            if !header_seen {
                if line != "x,y" {
                    return Err(bad("expected header x,y"));
                }
                header_seen = true;
                continue;
            }
            let (x, y) = line.split_once(',').ok_or_else(|| bad("expected x,y"))?;
            points.push(Point::new(
                x.trim().parse().map_err(|_| bad("bad x"))?,
                y.trim().parse().map_err(|_| bad("bad y"))?,
            ));
        }
        let side = side.ok_or_else(|| Error::Parse("missing '# side=' line".into()))?;
        let region = Region::new(origin.0, origin.1, side)?;
        Self::from_points(region, points, seed)
    }

    pub fn load_csv(path: impl AsRef<Path>) -> Result<Self> {
        let file = std::fs::File::open(path)?;
        Self::read_csv(std::io::BufReader::new(file))
    }
}

/// Formats a real with 17 significant digits (round-trip exact).
pub fn fmt_real(v: f64) -> String {
    format!("{v:.16e}")
}

/// Draws an exact Poisson(`mean`) variate.
pub fn poisson_count<R: Rng + ?Sized>(mean: f64, rng: &mut R) -> Result<u64> {
    if !(mean.is_finite() && mean >= 0.0) {
        return Err(invalid(format!("Poisson mean must be finite and >= 0, got {mean}")));
    }
    if mean == 0.0 {
        return Ok(0);
    }
    if mean < 10.0 {
        Ok(poisson_inversion(mean, rng))
    } else {
        Ok(poisson_ptrs(mean, rng))
    }
}

fn poisson_inversion<R: Rng + ?Sized>(mean: f64, rng: &mut R) -> u64 {
    let u: f64 = rng.gen();
    let mut k = 0u64;
    let mut p = (-mean).exp();
    let mut cdf = p;
    while u >= cdf {
        k += 1;
        p *= mean / k as f64;
        if p == 0.0 {
            // cdf saturated below u by rounding; the remaining mass is < 1e-300
            break;
        }
        cdf += p;
    }
    k
}

fn poisson_ptrs<R: Rng + ?Sized>(mean: f64, rng: &mut R) -> u64 {
    let slam = mean.sqrt();
    let loglam = mean.ln();
    let b = 0.931 + 2.53 * slam;
    let a = -0.059 + 0.02483 * b;
    let inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    let vr = 0.9277 - 3.6224 / (b - 2.0);
    loop {
        let u: f64 = rng.gen::<f64>() - 0.5;
        let v: f64 = rng.gen();
        let us = 0.5 - u.abs();
        let k = ((2.0 * a / us + b) * u + mean + 0.43).floor();
        if us >= 0.07 && v <= vr {
            return k as u64;
        }
        if k < 0.0 || (us < 0.013 && v > us) {
            continue;
        }
        if v.ln() + inv_alpha.ln() - (a / (us * us) + b).ln() <= -mean + k * loglam - ln_factorial(k as u64) {
            return k as u64;
        }
    }
}

/// `ln(k!)`: exact table below 20, Stirling series above.
pub(crate) fn ln_factorial(k: u64) -> f64 {
    if k < 20 {
        let mut f: u64 = 1;
        for i in 2..=k {
            f *= i;
        }
        return (f as f64).ln();
    }
    let x = k as f64 + 1.0;
    let x2 = x * x;
    (x - 0.5) * x.ln() - x + 0.5 * (2.0 * std::f64::consts::PI).ln() + 1.0 / (12.0 * x)
        - 1.0 / (360.0 * x * x2)
        + 1.0 / (1260.0 * x * x2 * x2)
        - 1.0 / (1680.0 * x * x2 * x2 * x2)
}

/// Poisson process of `intensity` on `region`: the count is
/// Poisson(area * intensity), positions are i.i.d. uniform.
pub fn sample_poisson(region: Region, intensity: f64, seed: u64) -> Result<PointSet> {
    if !(intensity.is_finite() && intensity >= 0.0) {
        return Err(invalid(format!("intensity must be finite and >= 0, got {intensity}")));
    }
    let mut count_rng = rng::stream(seed, COUNT_STREAM);
    let m = poisson_count(region.area() * intensity, &mut count_rng)?;
    sample_fixed(region, m as usize, seed)
}

/// Exactly `m` i.i.d. uniform points. For a fixed seed the outputs form a
/// prefix family: the first `m` points agree for every `m' >= m`.
pub fn sample_fixed(region: Region, m: usize, seed: u64) -> Result<PointSet> {
    let region = Region::new(region.origin_x, region.origin_y, region.side)?;
    let mut rng = rng::stream(seed, POSITION_STREAM);
    let points = (0..m)
        .map(|_| {
            let u: f64 = rng.gen();
            let v: f64 = rng.gen();
            Point::new(region.origin_x + region.side * u, region.origin_y + region.side * v)
        })
        .collect();
    Ok(PointSet { region, points, seed })
}

/// Removes the points at `victims`, keeping survivors in their original order.
pub fn delete_points(ps: &PointSet, victims: &[usize]) -> Result<PointSet> {
    let mut doomed = vec![false; ps.len()];
    for &v in victims {
        match doomed.get_mut(v) {
            None => return Err(invalid(format!("victim index {v} out of range for {} points", ps.len()))),
            Some(true) => return Err(invalid(format!("victim index {v} listed twice"))),
            Some(flag) => *flag = true,
        }
    }
    let points = ps
        .points
        .iter()
        .zip(&doomed)
        .filter(|(_, &d)| !d)
        .map(|(p, _)| *p)
        .collect();
    Ok(PointSet { region: ps.region, points, seed: ps.seed })
}

/// Original indices of the survivors of [`delete_points`], in order.
pub fn surviving_indices(len: usize, victims: &[usize]) -> Vec<usize> {
    let mut doomed = vec![false; len];
    for &v in victims {
        if v < len {
            doomed[v] = true;
        }
    }
    (0..len).filter(|&i| !doomed[i]).collect()
}
