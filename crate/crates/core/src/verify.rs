//! The verification suite behind `artin verify`.
//!
//! Each check prints one line `CHECK <name> PASS|FAIL|INCONCLUSIVE <details>`.

use crate::deligne::{develop_ball, link_angle_violations, BallConfig, DeligneBall};
use crate::dihedral::delta_power_coset_violation;
use crate::error::{Error, Result};
use crate::farey::{edge_two_triangles, farey_ball, interior_four_cycles, link_is_line, LinkShape, DEFAULT_WINDOW};
use crate::graph::{girth, DefiningGraph, SimpleGraph};
use crate::hierarchy::{condition_c1, condition_c2};
use crate::igraph::{build_td_ball, exotic_pentagon, g1_g2_probe, six_cycle_audit, IntersectionBall, TypedPattern, EMBED_BUDGET};
use crate::oracle::DEFAULT_BUDGET;
use std::fmt;
use std::str::FromStr;

pub const DEFAULT_FAREY_QMAX: i64 = 12;
/// Box for the Delta-power coset check.
pub const DELTA_BOX: i64 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Check {
    Girth6,
    Bipartite,
    SixCycleAudit,
    G1G2,
    Pentagon,
    DeltaUniqueness,
    LinkAngle,
    Farey,
    C1C2,
}

impl Check {
    pub const ALL: [Check; 9] = [
        Check::Girth6,
        Check::Bipartite,
        Check::SixCycleAudit,
        Check::G1G2,
        Check::Pentagon,
        Check::DeltaUniqueness,
        Check::LinkAngle,
        Check::Farey,
        Check::C1C2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Girth6 => "girth6",
            Check::Bipartite => "bipartite",
            Check::SixCycleAudit => "six_cycle_audit",
            Check::G1G2 => "g1_g2",
            Check::Pentagon => "pentagon",
            Check::DeltaUniqueness => "delta_uniqueness",
            Check::LinkAngle => "link_angle",
            Check::Farey => "farey",
            Check::C1C2 => "c1c2",
        }
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Input(format!("unknown check {s}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckLine {
    pub check: Check,
    pub status: Status,
    pub details: String,
}

impl fmt::Display for CheckLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Inconclusive => "INCONCLUSIVE",
        };
        write!(f, "CHECK {} {} {}", self.check.name(), s, self.details)
    }
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub ball: BallConfig,
    pub oracle_budget: usize,
    pub embed_budget: usize,
    pub checks: Vec<Check>,
    pub g2_template: Option<TypedPattern>,
    pub farey_qmax: i64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            ball: BallConfig::default(),
            oracle_budget: DEFAULT_BUDGET,
            embed_budget: EMBED_BUDGET,
            checks: Check::ALL.to_vec(),
            g2_template: None,
            farey_qmax: DEFAULT_FAREY_QMAX,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub lines: Vec<CheckLine>,
    /// A budget or size cap stopped some check.
    pub exhausted: bool,
}

impl Report {
    pub fn count(&self, status: Status) -> usize {
        self.lines.iter().filter(|l| l.status == status).count()
    }

    pub fn failed(&self) -> bool {
        self.count(Status::Fail) > 0
    }

    pub fn to_text(&self) -> String {
        let mut s: String = self.lines.iter().map(|l| format!("{l}\n")).collect();
        s.push_str(&format!(
            "SUMMARY pass {} fail {} inconclusive {}\n",
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Inconclusive)
        ));
        s
    }
}

type Outcome = Result<(Status, String)>;

fn pass_if(ok: bool, details: String) -> Outcome {
    Ok((if ok { Status::Pass } else { Status::Fail }, details))
}

struct Suite<'a> {
    g: &'a DefiningGraph,
    config: &'a VerifyConfig,
    balls: Option<Result<(DeligneBall, IntersectionBall)>>,
}

impl Suite<'_> {
    fn spans(&mut self) -> Result<&(DeligneBall, IntersectionBall)> {
        if self.balls.is_none() {
            let built = develop_ball(self.g, self.config.ball).and_then(|b| {
                let ib = build_td_ball(&b)?;
                Ok((b, ib))
            });
            self.balls = Some(built);
        }
        self.balls.as_ref().unwrap().as_ref().map_err(Clone::clone)
    }

    fn girth6(&mut self) -> Outcome {
        let has_triangle = !self.g.triangles().is_empty();
        let (_, ib) = self.spans()?;
        let gi = girth(&ib.graph);
        let shown = gi.map_or("none".to_string(), |x| x.to_string());
        let squares = ib.four_cycles();
        let ok = squares == 0 && if has_triangle { gi == Some(6) } else { gi.map_or(true, |x| x >= 8) };
        let want = if has_triangle { "6" } else { ">= 8" };
        pass_if(ok, format!("girth {shown} (expected {want}) four_cycles {squares} vertices {}", ib.graph.n()))
    }

    fn bipartite(&mut self) -> Outcome {
        let (_, ib) = self.spans()?;
        let bad = ib.bad_edges().len();
        let bip = ib.graph.is_bipartite();
        pass_if(bip && bad == 0, format!("bipartite {bip} bad_edge_types {bad} edges {}", ib.graph.edge_count()))
    }

    fn six_cycle_audit(&mut self) -> Outcome {
        let budget = self.config.embed_budget;
        let (ball, ib) = self.spans()?;
        let a = six_cycle_audit(ib, ball, budget)?;
        let mut details = format!(
            "cycles {} interior {} unique {} multiple {} inconclusive {}",
            a.cycles, a.interior, a.unique, a.multiple, a.none
        );
        if let Some((cycle, chambers)) = &a.first_multiple {
            details.push_str(&format!(" first_multiple {cycle:?} chambers {chambers:?}"));
        }
        pass_if(a.passed(), details)
    }

    fn g1_g2(&mut self) -> Outcome {
        let g = self.g;
        let Some(&(x, y, z)) = g.triangles().first() else {
            return Ok((Status::Inconclusive, "no triangle".into()));
        };
        // put the largest label on ab
        let (a, b, c) = [(x, y, z), (x, z, y), (y, z, x)]
            .into_iter()
            .max_by_key(|&(a, b, _)| (g.label(a, b), std::cmp::Reverse((a, b))))
            .unwrap();
        let budget = self.config.embed_budget;
        let template = self.config.g2_template.clone();
        let n = g.label(a, b).unwrap() as usize;
        let r = if n - 1 > self.config.ball.residue_radius {
            // Y needs the residue out to length n - 1
            let config = BallConfig { residue_radius: n - 1, ..self.config.ball };
            let ball = develop_ball(g, config)?;
            let ib = build_td_ball(&ball)?;
            g1_g2_probe(&ball, &ib, (a, b, c), template.as_ref(), budget)?
        } else {
            let (ball, ib) = self.spans()?;
            g1_g2_probe(ball, ib, (a, b, c), template.as_ref(), budget)?
        };
        let names = g.describe_vertices(&[a, b, c]);
        let mut details = format!("triangle {names} n {} g1 {} g2 {}", r.n, r.g1.is_some(), r.g2.is_some());
        if let Some(m) = &r.g2 {
            details.push_str(&format!(" g2_embedding {m:?}"));
        }
        pass_if(r.passed(), details)
    }

    fn pentagon(&mut self) -> Outcome {
        let g = self.g;
        let Some(&(a, b, c)) = g.triangles().iter().find(|&&(a, b, c)| {
            [g.label(a, b), g.label(a, c), g.label(b, c)] == [Some(3); 3]
        }) else {
            return Ok((Status::Inconclusive, "no (3,3,3) triangle".into()));
        };
        match exotic_pentagon(g, a, b, c, self.config.oracle_budget) {
            Ok(p) => {
                let certified = p.certificates.iter().filter(|c| c.equal).count();
                let links = p.link_edges.iter().all(|&x| x);
                pass_if(
                    certified == 5 && p.girth == Some(5) && links,
                    format!("certified {certified}/5 girth {} modified_links {links}", p.girth.unwrap_or(0)),
                )
            }
            Err(Error::Certification(m)) => Ok((Status::Fail, m)),
            Err(e) => Err(e),
        }
    }

    fn delta_uniqueness(&mut self) -> Outcome {
        let mut labels: Vec<u32> = self.g.edges().iter().map(|e| e.m).filter(|&m| m >= 3).collect();
        labels.sort_unstable();
        labels.dedup();
        if labels.is_empty() {
            return Ok((Status::Inconclusive, "no label >= 3".into()));
        }
        for &m in &labels {
            if let Some(v) = delta_power_coset_violation(m, DELTA_BOX, DELTA_BOX) {
                return Ok((Status::Fail, format!("m {m} violation {v:?}")));
            }
        }
        Ok((Status::Pass, format!("labels {labels:?} box {DELTA_BOX}")))
    }

    fn link_angle(&mut self) -> Outcome {
        if !self.g.is_large_type() {
            return Ok((Status::Inconclusive, "not large type".into()));
        }
        let v = link_angle_violations(self.g);
        match v.first() {
            None => Ok((Status::Pass, "every non-adjacent pair is more than pi apart".into())),
            Some(&(a, b, d)) => Ok((Status::Fail, format!("{} at distance {d} pi", self.g.describe_vertices(&[a, b])))),
        }
    }

    fn farey(&mut self) -> Outcome {
        let mut lines = 0;
        let mut edges = 0;
        for qmax in 1..=self.config.farey_qmax {
            let ball = farey_ball(qmax, DEFAULT_WINDOW)?;
            for &v in &ball.vertices {
                match link_is_line(&ball, v) {
                    LinkShape::Line => lines += 1,
                    LinkShape::NotLine => return Ok((Status::Fail, format!("link of {v} at Qmax {qmax} is not a path"))),
                    LinkShape::BoundaryInconclusive => {}
                }
            }
            let t = edge_two_triangles(&ball);
            if let Some((x, y, k)) = t.bad.first() {
                return Ok((Status::Fail, format!("edge {x} {y} at Qmax {qmax} lies in {k} triangles")));
            }
            edges += t.interior_edges;
            let squares = interior_four_cycles(&ball);
            if squares > 0 {
                return Ok((Status::Fail, format!("{squares} interior 4-cycles at Qmax {qmax}")));
            }
        }
        Ok((Status::Pass, format!("Qmax 1..={} interior_links {lines} interior_edges {edges}", self.config.farey_qmax)))
    }

    fn c1c2(&mut self) -> Outcome {
        let s = self.g.simple();
        let mut graphs: Vec<(String, SimpleGraph)> = vec![("graph".into(), s.clone())];
        for v in 0..s.n() {
            graphs.push((format!("link({})", self.g.name(v)), s.induced(s.neighbors(v))));
        }
        for (what, h) in &graphs {
            let (c1, c2) = (condition_c1(h)?, condition_c2(h));
            if c1 != c2 {
                return Ok((Status::Fail, format!("{what}: C1 {c1} C2 {c2}")));
            }
        }
        let c1 = condition_c1(&s)?;
        Ok((Status::Pass, format!("graph C1 {c1}, agreement on graph and {} links", s.n())))
    }

    fn run(&mut self, check: Check) -> Outcome {
        match check {
            Check::Girth6 => self.girth6(),
            Check::Bipartite => self.bipartite(),
            Check::SixCycleAudit => self.six_cycle_audit(),
            Check::G1G2 => self.g1_g2(),
            Check::Pentagon => self.pentagon(),
            Check::DeltaUniqueness => self.delta_uniqueness(),
            Check::LinkAngle => self.link_angle(),
            Check::Farey => self.farey(),
            Check::C1C2 => self.c1c2(),
        }
    }
}

/// Runs the selected checks in the order given.
pub fn run_suite(g: &DefiningGraph, config: &VerifyConfig) -> Report {
    let mut suite = Suite { g, config, balls: None };
    let mut report = Report::default();
    for &check in &config.checks {
        let (status, details) = match suite.run(check) {
            Ok(x) => x,
            Err(e @ (Error::Budget(_) | Error::Size { .. } | Error::Unresolved(_))) => {
                report.exhausted = true;
                (Status::Inconclusive, format!("exhausted: {e}"))
            }
            Err(e) => (Status::Inconclusive, format!("not applicable: {e}")),
        };
        report.lines.push(CheckLine { check, status, details });
    }
    report
}
