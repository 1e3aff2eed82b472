use super::PermRelCategory;
use crate::fincat::{MorId, Violation};

/// Stops collecting after `max_violations` entries.
#[derive(Clone, Debug)]
pub struct LawBounds {
    pub max_violations: usize,
}

impl Default for LawBounds {
    fn default() -> Self {
        LawBounds { max_violations: 32 }
    }
}

struct Sink {
    out: Vec<Violation>,
    cap: usize,
}

impl Sink {
    fn full(&self) -> bool {
        self.out.len() >= self.cap
    }

    fn check(&mut self, ok: bool, kind: &'static str, detail: impl FnOnce() -> String) {
        if !ok && !self.full() {
            self.out.push(Violation::new(kind, detail()));
        }
    }
}

pub(super) fn validate(p: &PermRelCategory, bounds: &LawBounds) -> Vec<Violation> {
    let c = p.base().clone();
    let mut s = Sink { out: Vec::new(), cap: bounds.max_violations.max(1) };
    for e in p.rel.violations() {
        s.check(false, "weq", || e.to_string());
    }
    let ol = |o| c.object_label(o).to_string();
    let ml = |m| c.morphism_label(m).to_string();
    let id = |o| c.identity(o);
    let unit = p.unit();
    let comp = |g: Option<MorId>, f: Option<MorId>| match (g, f) {
        (Some(g), Some(f)) => c.compose(g, f),
        _ => None,
    };

    // Unit and associativity on objects.
    for a in c.objects() {
        s.check(p.tensor_obj(unit, a) == Some(a) && p.tensor_obj(a, unit) == Some(a), "unit", || {
            format!("I (x) {0} or {0} (x) I is not {0}", ol(a))
        });
        for b in c.objects() {
            let ab = p.tensor_obj(a, b);
            if let Some(ab) = ab {
                s.check(p.tensor_mor(id(a), id(b)) == Some(id(ab)), "identity", || {
                    format!("id_{} (x) id_{} is not an identity", ol(a), ol(b))
                });
                let br = p.braid(a, b);
                let ba = p.tensor_obj(b, a);
                s.check(br.is_some() && br.map(|m| (c.dom(m), c.cod(m))) == ba.map(|ba| (ab, ba)), "braid", || {
                    format!("braid at ({}, {}) missing or with wrong endpoints", ol(a), ol(b))
                });
                if let (Some(br), Some(back)) = (br, p.braid(b, a)) {
                    s.check(c.compose(back, br) == Some(id(ab)), "symmetry", || {
                        format!("braid({1}, {0}) o braid({0}, {1}) is not the identity", ol(a), ol(b))
                    });
                }
            }
            for x in c.objects() {
                let left = ab.and_then(|ab| p.tensor_obj(ab, x));
                let right = p.tensor_obj(b, x).and_then(|bx| p.tensor_obj(a, bx));
                s.check(left == right, "associativity", || {
                    format!("({} (x) {}) (x) {} differs from the right-nested tensor", ol(a), ol(b), ol(x))
                });
                // braid(a (x) b, x) = (braid(a, x) (x) id_b) o (id_a (x) braid(b, x))
                if let Some(abx) = left {
                    let lhs = p.braid(ab.unwrap(), x);
                    let first = p.braid(b, x).and_then(|bx| p.tensor_mor(id(a), bx));
                    let second = p.braid(a, x).and_then(|ax| p.tensor_mor(ax, id(b)));
                    let rhs = comp(second, first);
                    s.check(lhs.is_some() && lhs == rhs, "hexagon", || {
                        format!("hexagon fails at ({}, {}, {}) [{}]", ol(a), ol(b), ol(x), ol(abx))
                    });
                }
            }
        }
        s.check(p.braid(unit, a) == Some(id(a)), "braid-unit", || format!("braid(I, {}) is not the identity", ol(a)));
        if s.full() {
            return s.out;
        }
    }

    // Morphisms whose tensor with `f` is defined, per `f`.
    let partners: Vec<Vec<MorId>> =
        c.morphisms().map(|f| c.morphisms().filter(|&g| p.tensor_mor(f, g).is_some()).collect()).collect();

    // Morphism-level laws.
    for f in c.morphisms() {
        let iu = id(unit);
        s.check(p.tensor_mor(iu, f) == Some(f) && p.tensor_mor(f, iu) == Some(f), "unit", || {
            format!("id_I (x) {0} or {0} (x) id_I is not {0}", ml(f))
        });
        let (df, cf) = (c.dom(f), c.cod(f));
        for &g in &partners[f] {
            let Some(fg) = p.tensor_mor(f, g) else { continue };
            let (dg, cg) = (c.dom(g), c.cod(g));
            s.check(
                Some(c.dom(fg)) == p.tensor_obj(df, dg) && Some(c.cod(fg)) == p.tensor_obj(cf, cg),
                "endpoints",
                || format!("{} (x) {} has wrong endpoints", ml(f), ml(g)),
            );
            let via_left = comp(p.tensor_mor(f, id(cg)), p.tensor_mor(id(df), g));
            let via_right = comp(p.tensor_mor(id(cf), g), p.tensor_mor(f, id(dg)));
            // In a truncation a whiskering may leave the bound; compare the defined ones.
            let agrees = |w: Option<MorId>| w.map_or(true, |w| w == fg);
            s.check(agrees(via_left) && agrees(via_right), "interchange", || {
                format!("{} (x) {} does not factor through whiskerings", ml(f), ml(g))
            });
            if p.rel.is_weq(f) && p.rel.is_weq(g) {
                s.check(p.rel.is_weq(fg), "weq-tensor", || format!("{} (x) {} is not a weak equivalence", ml(f), ml(g)));
            }
            let natural = comp(p.braid(cf, cg), Some(fg)) == comp(p.tensor_mor(g, f), p.braid(df, dg));
            s.check(natural, "braid-naturality", || format!("braid is not natural at ({}, {})", ml(f), ml(g)));
            let mut hs: Vec<MorId> = partners[fg].iter().chain(&partners[g]).copied().collect();
            hs.sort_unstable();
            hs.dedup();
            for h in hs {
                let left = p.tensor_mor(fg, h);
                let right = p.tensor_mor(g, h).and_then(|gh| p.tensor_mor(f, gh));
                s.check(left == right, "associativity", || {
                    format!("({} (x) {}) (x) {} differs from the right-nested tensor", ml(f), ml(g), ml(h))
                });
            }
        }
        // Functoriality in each variable.
        for &g in c.outgoing(cf) {
            let gf = c.compose(g, f);
            for y in c.objects() {
                let iy = id(y);
                let lhs = gf.and_then(|gf| p.tensor_mor(gf, iy));
                let rhs = comp(p.tensor_mor(g, iy), p.tensor_mor(f, iy));
                if lhs.is_some() && rhs.is_some() {
                    s.check(lhs == rhs, "functoriality", || {
                        format!("(- (x) {}) fails on {} o {}", ol(y), ml(g), ml(f))
                    });
                }
                let lhs = gf.and_then(|gf| p.tensor_mor(iy, gf));
                let rhs = comp(p.tensor_mor(iy, g), p.tensor_mor(iy, f));
                if lhs.is_some() && rhs.is_some() {
                    s.check(lhs == rhs, "functoriality", || {
                        format!("({} (x) -) fails on {} o {}", ol(y), ml(g), ml(f))
                    });
                }
            }
        }
        if s.full() {
            break;
        }
    }
    s.out
}
