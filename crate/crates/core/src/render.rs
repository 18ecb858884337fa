//! Basin classification of pixel grids and PPM output.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::ParamPoint;
use crate::orbitlab::{AttractorId, Classifier, OrbitOptions, OrbitStatus};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Window {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
    pub width: usize,
    pub height: usize,
}

impl Window {
    pub fn new(x_min: f64, x_max: f64, y_min: f64, y_max: f64, width: usize, height: usize) -> Result<Self> {
        let finite = [x_min, x_max, y_min, y_max].iter().all(|v| v.is_finite());
        if !(finite && x_min < x_max && y_min < y_max) {
            return Err(Error::invalid(format!("window needs x_min < x_max and y_min < y_max, got {x_min}:{x_max}:{y_min}:{y_max}")));
        }
        if width == 0 || height == 0 {
            return Err(Error::invalid("window needs at least one pixel in each direction"));
        }
        Ok(Window { x_min, x_max, y_min, y_max, width, height })
    }

    /// `−1.5π < x < 1.5π`, `−2π < y < 0`.
    pub fn figure(width: usize, height: usize) -> Self {
        use std::f64::consts::PI;
        Window { x_min: -1.5 * PI, x_max: 1.5 * PI, y_min: -2.0 * PI, y_max: 0.0, width, height }
    }

    pub fn len(&self) -> usize {
        self.width * self.height
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Centre of pixel `(i, j)`; row `j = 0` is the top (`y_max`).
    pub fn pixel_center(&self, i: usize, j: usize) -> Complex64 {
        let dx = (self.x_max - self.x_min) / self.width as f64;
        let dy = (self.y_max - self.y_min) / self.height as f64;
        Complex64::new(self.x_min + (i as f64 + 0.5) * dx, self.y_max - (j as f64 + 0.5) * dy)
    }

    /// Same extent, each pixel split into `factor × factor` pixels.
    pub fn supersampled(&self, factor: usize) -> Self {
        Window { width: self.width * factor, height: self.height * factor, ..*self }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BasinLabel {
    Origin,
    RealFixedPlus,
    RealFixedMinus,
    ImagTwoCycle,
    Escaped,
    PoleHit,
    Undecided,
}

impl BasinLabel {
    pub const ALL: [BasinLabel; 7] = [
        BasinLabel::Origin,
        BasinLabel::RealFixedPlus,
        BasinLabel::RealFixedMinus,
        BasinLabel::ImagTwoCycle,
        BasinLabel::Escaped,
        BasinLabel::PoleHit,
        BasinLabel::Undecided,
    ];

    pub fn from_status(s: OrbitStatus) -> Self {
        match s {
            OrbitStatus::ConvergedTo(AttractorId::Origin) => BasinLabel::Origin,
            OrbitStatus::ConvergedTo(AttractorId::RealFixedPlus) => BasinLabel::RealFixedPlus,
            OrbitStatus::ConvergedTo(AttractorId::RealFixedMinus) => BasinLabel::RealFixedMinus,
            OrbitStatus::ConvergedTo(AttractorId::ImagTwoCycle) => BasinLabel::ImagTwoCycle,
            OrbitStatus::Escaped => BasinLabel::Escaped,
            OrbitStatus::PoleHit => BasinLabel::PoleHit,
            OrbitStatus::Undecided => BasinLabel::Undecided,
        }
    }

    /// Label of the mirrored seed `−z̄` (reflection in the imaginary axis).
    pub fn mirror(self) -> Self {
        match self {
            BasinLabel::RealFixedPlus => BasinLabel::RealFixedMinus,
            BasinLabel::RealFixedMinus => BasinLabel::RealFixedPlus,
            l => l,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            BasinLabel::Origin => "origin",
            BasinLabel::RealFixedPlus => "real_fixed_plus",
            BasinLabel::RealFixedMinus => "real_fixed_minus",
            BasinLabel::ImagTwoCycle => "imag_two_cycle",
            BasinLabel::Escaped => "escaped",
            BasinLabel::PoleHit => "pole_hit",
            BasinLabel::Undecided => "undecided",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        BasinLabel::ALL.into_iter().find(|l| l.name() == s)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridMetadata {
    pub max_iter: usize,
    pub eps_attr: f64,
    pub escape_radius: f64,
    pub generator: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassifiedGrid {
    pub lambda: f64,
    pub window: Window,
    /// Row-major, top row first.
    pub labels: Vec<BasinLabel>,
    pub iterations: Vec<u32>,
    pub metadata: GridMetadata,
}

impl ClassifiedGrid {
    pub fn label(&self, i: usize, j: usize) -> BasinLabel {
        self.labels[j * self.window.width + i]
    }

    pub fn row(&self, j: usize) -> &[BasinLabel] {
        let w = self.window.width;
        &self.labels[j * w..(j + 1) * w]
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct RenderOptions {
    /// Worker count; `None` uses the global pool.
    pub threads: Option<usize>,
    /// Overrides the iteration cap chosen for the parameter.
    pub max_iter: Option<usize>,
}

fn classify_rows(cls: &Classifier, w: &Window) -> Vec<(BasinLabel, u32)> {
    let row = |j: usize| -> Vec<(BasinLabel, u32)> {
        (0..w.width)
            .map(|i| {
                let out = cls.classify(w.pixel_center(i, j));
                (BasinLabel::from_status(out.status), out.iterations.min(u32::MAX as usize) as u32)
            })
            .collect()
    };
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..w.height).into_par_iter().flat_map_iter(row).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..w.height).flat_map(row).collect()
    }
}

pub fn render_grid(p: &ParamPoint, w: &Window, opts: &RenderOptions) -> Result<ClassifiedGrid> {
    let w = Window::new(w.x_min, w.x_max, w.y_min, w.y_max, w.width, w.height)?;
    let mut options = OrbitOptions::for_param(p)?;
    if let Some(m) = opts.max_iter {
        if m == 0 {
            return Err(Error::invalid("max_iter must be positive"));
        }
        options.max_iter = m;
    }
    let cls = Classifier::with_options(p, options)?;
    let cells = run_with_threads(opts.threads, || classify_rows(&cls, &w))?;
    let (labels, iterations) = cells.into_iter().unzip();
    Ok(ClassifiedGrid {
        lambda: p.lambda(),
        window: w,
        labels,
        iterations,
        metadata: GridMetadata {
            max_iter: options.max_iter,
            eps_attr: options.eps_attr,
            escape_radius: options.escape_radius,
            generator: concat!("merosin ", env!("CARGO_PKG_VERSION")).to_string(),
        },
    })
}

/// Runs `job` on a dedicated pool of `threads` workers (`None`: the global
/// pool). Without the `parallel` feature the job runs on the caller.
#[cfg(feature = "parallel")]
pub fn run_with_threads<T: Send>(threads: Option<usize>, job: impl FnOnce() -> T + Send) -> Result<T> {
    match threads {
        None => Ok(job()),
        Some(0) => Err(Error::invalid("thread count must be positive")),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::invalid(format!("cannot start {n} worker threads: {e}")))?;
            Ok(pool.install(job))
        }
    }
}

#[cfg(not(feature = "parallel"))]
pub fn run_with_threads<T>(threads: Option<usize>, job: impl FnOnce() -> T) -> Result<T> {
    if threads == Some(0) {
        return Err(Error::invalid("thread count must be positive"));
    }
    Ok(job())
}

/// Fraction of pixels per label; every label is present, possibly at 0.
pub fn basin_fractions(g: &ClassifiedGrid) -> BTreeMap<BasinLabel, f64> {
    let mut counts: BTreeMap<BasinLabel, usize> = BasinLabel::ALL.iter().map(|&l| (l, 0)).collect();
    for &l in &g.labels {
        *counts.get_mut(&l).expect("every label is pre-seeded") += 1;
    }
    let n = g.labels.len().max(1) as f64;
    counts.into_iter().map(|(l, c)| (l, c as f64 / n)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Palette {
    pub origin: [u8; 3],
    pub real_fixed_plus: [u8; 3],
    pub real_fixed_minus: [u8; 3],
    pub imag_two_cycle: [u8; 3],
    pub escaped: [u8; 3],
    pub pole_hit: [u8; 3],
    pub undecided: [u8; 3],
}

impl Default for Palette {
    fn default() -> Self {
        Palette {
            origin: [220, 20, 20],
            real_fixed_plus: [240, 160, 40],
            real_fixed_minus: [160, 240, 40],
            imag_two_cycle: [20, 90, 220],
            escaped: [0, 0, 0],
            pole_hit: [255, 255, 255],
            undecided: [128, 128, 128],
        }
    }
}

impl Palette {
    pub fn color(&self, l: BasinLabel) -> [u8; 3] {
        match l {
            BasinLabel::Origin => self.origin,
            BasinLabel::RealFixedPlus => self.real_fixed_plus,
            BasinLabel::RealFixedMinus => self.real_fixed_minus,
            BasinLabel::ImagTwoCycle => self.imag_two_cycle,
            BasinLabel::Escaped => self.escaped,
            BasinLabel::PoleHit => self.pole_hit,
            BasinLabel::Undecided => self.undecided,
        }
    }
}

/// Binary PPM (`P6`) bytes of the grid.
pub fn encode_ppm(g: &ClassifiedGrid, palette: &Palette) -> Vec<u8> {
    let header = format!("P6\n{} {}\n255\n", g.window.width, g.window.height);
    let mut out = Vec::with_capacity(header.len() + 3 * g.labels.len());
    out.extend_from_slice(header.as_bytes());
    for &l in &g.labels {
        out.extend_from_slice(&palette.color(l));
    }
    out
}

pub fn write_ppm(g: &ClassifiedGrid, palette: &Palette, path: &Path) -> Result<()> {
    std::fs::write(path, encode_ppm(g, palette))
        .map_err(|e| Error::Io { path: path.to_path_buf(), message: e.to_string() })
}

/// Grid dump with header `i,j,label,iterations`.
pub fn grid_csv(g: &ClassifiedGrid) -> String {
    let mut s = String::from("i,j,label,iterations\n");
    for j in 0..g.window.height {
        for i in 0..g.window.width {
            let k = j * g.window.width + i;
            let _ = writeln!(s, "{i},{j},{},{}", g.labels[k].name(), g.iterations[k]);
        }
    }
    s
}

/// Parses [`grid_csv`] output into `(i, j, label, iterations)` records.
pub fn parse_grid_csv(text: &str) -> Result<Vec<(usize, usize, BasinLabel, u32)>> {
    let mut lines = text.lines();
    if lines.next() != Some("i,j,label,iterations") {
        return Err(Error::invalid("unexpected grid CSV header"));
    }
    lines
        .filter(|l| !l.is_empty())
        .map(|l| {
            let bad = || Error::invalid(format!("bad grid CSV line `{l}`"));
            let f: Vec<&str> = l.split(',').collect();
            if f.len() != 4 {
                return Err(bad());
            }
            Ok((
                f[0].parse().map_err(|_| bad())?,
                f[1].parse().map_err(|_| bad())?,
                BasinLabel::from_name(f[2]).ok_or_else(bad)?,
                f[3].parse().map_err(|_| bad())?,
            ))
        })
        .collect()
}
