//! Pinned reproductions of the worked examples. Each recipe reports computed
//! quantities next to the claimed ones and flags agreement per item.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::certify::{
    check_corollary1, check_theorem1, check_theorem2, check_theorem3, default_stft_lattice,
    dilation_threshold, stft_decay_radius, Certificate, CertifyOptions, Verdict,
};
use crate::error::{Error, Result};
use crate::funcs::{make_example1, make_example2, make_gaussian};
use crate::oracle::{dependence_residual_er, dependence_residual_er_with_coefficient};
use crate::tfops::{GridSpec, PointSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Recipe {
    Example1,
    Example2,
    ErDependence,
    GaussianStft,
    DilationScan,
}

impl Recipe {
    pub const ALL: [Recipe; 5] = [
        Recipe::Example1,
        Recipe::Example2,
        Recipe::ErDependence,
        Recipe::GaussianStft,
        Recipe::DilationScan,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Recipe::Example1 => "example1",
            Recipe::Example2 => "example2",
            Recipe::ErDependence => "er_dependence",
            Recipe::GaussianStft => "gaussian_stft",
            Recipe::DilationScan => "dilation_scan",
        }
    }
}

impl fmt::Display for Recipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Recipe {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Recipe::ALL
            .into_iter()
            .find(|r| r.name() == s || r.name().replace('_', "-") == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown recipe '{s}'")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReproItem {
    pub name: String,
    pub computed: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub claimed: Option<f64>,
    /// How `claimed` is to be read (equality within a tolerance, an upper bound, ...).
    pub claim: String,
    pub agrees: bool,
    /// A known mismatch with the source that is reported rather than hidden.
    pub discrepancy_expected: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl ReproItem {
    fn close(name: &str, computed: f64, claimed: f64, tol: f64) -> Self {
        Self {
            name: name.into(),
            computed,
            claimed: Some(claimed),
            claim: format!("equal within {tol:e}"),
            agrees: (computed - claimed).abs() <= tol,
            discrepancy_expected: false,
            note: None,
        }
    }

    fn below(name: &str, computed: f64, limit: f64) -> Self {
        Self {
            name: name.into(),
            computed,
            claimed: Some(limit),
            claim: "strictly below".into(),
            agrees: computed < limit,
            discrepancy_expected: false,
            note: None,
        }
    }

    fn flag(name: &str, holds: bool, claim: &str) -> Self {
        Self {
            name: name.into(),
            computed: if holds { 1.0 } else { 0.0 },
            claimed: Some(1.0),
            claim: claim.into(),
            agrees: holds,
            discrepancy_expected: false,
            note: None,
        }
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub r: f64,
    pub certified: bool,
    pub expected: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReproReport {
    pub recipe: Recipe,
    /// True when every item agrees or is an expected discrepancy.
    pub pass: bool,
    pub items: Vec<ReproItem>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub certificates: Vec<Certificate>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub scan: Vec<ScanRow>,
}

impl ReproReport {
    fn new(
        recipe: Recipe,
        items: Vec<ReproItem>,
        certificates: Vec<Certificate>,
        scan: Vec<ScanRow>,
    ) -> Self {
        let pass = items.iter().all(|i| i.agrees || i.discrepancy_expected);
        Self {
            recipe,
            pass,
            items,
            certificates,
            scan,
        }
    }

    /// Items as CSV; the scan table follows when present.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("name,computed,claimed,agrees,discrepancy_expected\n");
        for i in &self.items {
            out.push_str(&format!(
                "{},{:e},{},{},{}\n",
                i.name,
                i.computed,
                i.claimed.map(|c| format!("{c:e}")).unwrap_or_default(),
                i.agrees,
                i.discrepancy_expected
            ));
        }
        if !self.scan.is_empty() {
            out.push_str("\nr,certified,expected\n");
            for s in &self.scan {
                out.push_str(&format!("{:e},{},{}\n", s.r, s.certified, s.expected));
            }
        }
        out
    }
}

pub fn run(recipe: Recipe, opts: &CertifyOptions) -> Result<ReproReport> {
    match recipe {
        Recipe::Example1 => example1(opts),
        Recipe::Example2 => example2(opts),
        Recipe::ErDependence => er_dependence(),
        Recipe::GaussianStft => gaussian_stft(opts),
        Recipe::DilationScan => dilation_scan(opts),
    }
}

/// The four-point set `{(0,0), (1,0), (0,1), (sqrt 2, sqrt 2)}`.
pub fn lambda_prime() -> PointSet {
    let s = 2f64.sqrt();
    PointSet::from_pairs(&[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (s, s)]).expect("static point set")
}

fn example1_set() -> PointSet {
    PointSet::from_pairs(&[(0.0, 0.0), (1.0, 1.0), (2.0, 2.0), (3.0, 3.0)])
        .expect("static point set")
}

/// Smallest nonzero distance between time coordinates.
fn distinct_time_separation(lam: &PointSet) -> f64 {
    let t = lam.times();
    let mut m = f64::INFINITY;
    for i in 0..t.len() {
        for j in i + 1..t.len() {
            let d = crate::tfops::distance(&t[i], &t[j]);
            if d > 0.0 {
                m = m.min(d);
            }
        }
    }
    m
}

fn example1(opts: &CertifyOptions) -> Result<ReproReport> {
    let lam = example1_set();
    let certified = |c: f64| -> Result<bool> {
        Ok(check_theorem1(&make_example1(c, 5.0)?, &lam, opts)?.is_certified())
    };
    // The verdict is monotone in C; bisect the switch.
    let (mut lo, mut hi) = (1.0, 10.0);
    if certified(lo)? || !certified(hi)? {
        return Err(Error::NotCertifiable(
            "threshold not bracketed in [1, 10]".into(),
        ));
    }
    while hi - lo > 1e-9 {
        let mid = 0.5 * (lo + hi);
        if certified(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let mut items = vec![ReproItem::close(
        "threshold C, times {0,1,2,3}, N=4",
        hi,
        3.0,
        1e-8,
    )];

    let lp = lambda_prime();
    let c_claim = 3.0 / (2f64.sqrt() - 1.0);
    let literal = check_theorem1(&make_example1(8.0, 0.0)?, &lp, opts)?;
    items.push(ReproItem {
        name: "Lambda' literal time separation M".into(),
        computed: literal.separation,
        claimed: Some(2f64.sqrt() - 1.0),
        claim: "threshold 3/(sqrt 2 - 1) presupposes this M".into(),
        agrees: (literal.separation - (2f64.sqrt() - 1.0)).abs() < 1e-12,
        discrepancy_expected: true,
        note: Some(
            "(0,0) and (0,1) share time coordinate 0, so the literal minimum time separation is 0 \
             and the hypothesis fails for every C"
                .into(),
        ),
    });
    let m_distinct = distinct_time_separation(&lp);
    items.push(
        ReproItem::close(
            "Lambda' threshold under distinct-time reading",
            3.0 / m_distinct,
            c_claim,
            1e-9,
        )
        .with_note("M taken as the smallest nonzero time difference"),
    );
    let above = check_theorem1(&make_example1(c_claim + 0.5, 0.0)?, &lp, opts)?;
    items.push(ReproItem {
        name: "Lambda' certified for C above the claimed threshold".into(),
        computed: if above.is_certified() { 1.0 } else { 0.0 },
        claimed: Some(1.0),
        claim: "certified".into(),
        agrees: above.is_certified(),
        discrepancy_expected: true,
        note: above.note.clone(),
    });
    Ok(ReproReport::new(
        Recipe::Example1,
        items,
        vec![literal, above],
        Vec::new(),
    ))
}

fn example2(opts: &CertifyOptions) -> Result<ReproReport> {
    let f = make_example2(0.0)?;
    let lam = PointSet::from_pairs(&[(0.0, 0.0), (2.0, 1.0), (4.0, 2.0), (6.0, 3.0)])?;
    let cert = check_theorem2(&f, &lam, opts)?;
    let x = cert
        .translate_x
        .as_ref()
        .map(|x| crate::tfops::norm(x))
        .unwrap_or(f64::NAN);
    let items = vec![
        ReproItem::flag(
            "Theorem 2 certificate, N=4, time separation 2",
            cert.is_certified(),
            "certified",
        ),
        ReproItem::below("|x| of the singular translate", x, 1.0 / 81.0)
            .with_note("|f(x)| = |x|^{-1/4} must exceed A(N-1) = 3 with A = 1 outside radius 1"),
    ];
    Ok(ReproReport::new(
        Recipe::Example2,
        items,
        vec![cert],
        Vec::new(),
    ))
}

/// `[-3, 3]^2` with step 0.25.
pub fn er_lattice() -> GridSpec {
    GridSpec::new(3.0, 25, 0.0).expect("static grid")
}

fn er_dependence() -> Result<ReproReport> {
    let r = dependence_residual_er(&er_lattice(), 1e-9)?;
    let control = dependence_residual_er_with_coefficient(&er_lattice(), 1e-9, 2.1)?;
    let items = vec![
        ReproItem::below(
            "max five-term residual on [-3,3]^2, step 0.25",
            r.max_abs_residual,
            1e-6,
        ),
        ReproItem {
            name: "control: residual with coefficient 2.1".into(),
            computed: control.max_abs_residual,
            claimed: Some(1e-3),
            claim: "strictly above".into(),
            agrees: control.max_abs_residual > 1e-3,
            discrepancy_expected: false,
            note: None,
        },
    ];
    Ok(ReproReport::new(
        Recipe::ErDependence,
        items,
        Vec::new(),
        Vec::new(),
    ))
}

fn gaussian_stft(opts: &CertifyOptions) -> Result<ReproReport> {
    let g = make_gaussian(1)?;
    let grid = GridSpec::default_for(1);
    let lattice = default_stft_lattice(1);
    let (r, _, _) = stft_decay_radius(&g, &g, 4, &grid, &lattice, opts)?;
    let exact = (2.0 * 3f64.ln() / PI).sqrt();
    let cert = check_theorem3(&g, &g, &lambda_prime(), &grid, &lattice, opts)?;
    let items = vec![
        ReproItem::close("STFT decay radius, N=4", r, exact, 1e-3),
        ReproItem::flag(
            "Theorem 3 certificate on Lambda'",
            cert.is_certified(),
            "certified",
        ),
    ];
    Ok(ReproReport::new(
        Recipe::GaussianStft,
        items,
        vec![cert],
        Vec::new(),
    ))
}

/// Three points with minimum time separation 1.
pub fn dilation_scan_set() -> PointSet {
    PointSet::from_pairs(&[(0.0, 0.0), (1.0, 0.5), (2.5, -0.3)]).expect("static point set")
}

fn dilation_scan(opts: &CertifyOptions) -> Result<ReproReport> {
    let g = make_gaussian(1)?;
    let lam = dilation_scan_set();
    let thr = dilation_threshold(&g, &lam, opts)?;
    let exact = (PI / 2f64.ln()).sqrt();
    let step = 2.0 * thr / 21.0;
    let mut scan = Vec::with_capacity(20);
    for k in 1..=20 {
        let r = step * k as f64;
        let cert = check_corollary1(&g, &lam, r, opts)?;
        scan.push(ScanRow {
            r,
            certified: cert.verdict == Verdict::Certified,
            expected: r < thr,
        });
    }
    let mismatches = scan
        .iter()
        .filter(|s| s.certified != s.expected && (s.r - thr).abs() > step)
        .count();
    let items = vec![
        ReproItem::close("dilation threshold M/R, N=3, M=1", thr, exact, 1e-3),
        ReproItem::flag(
            "scan certifies exactly r < threshold",
            mismatches == 0,
            "no mismatch farther than one scan step from the threshold",
        ),
    ];
    Ok(ReproReport::new(
        Recipe::DilationScan,
        items,
        Vec::new(),
        scan,
    ))
}
