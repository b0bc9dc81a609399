use liewedge::catalog::cached_realization;
use liewedge::realize::{standard_involutions, Family};
use liewedge::wedge::{enumerate_table, nontube_restriction_check, EnumerationMode};
use std::collections::BTreeMap;
use std::time::Instant;

fn main() {
    let families = [
        Family::Su(1, 1), Family::Su(2, 2), Family::Su(3, 3),
        Family::Su(2, 1), Family::Su(3, 1), Family::Su(3, 2), Family::Su(4, 2),
        Family::Sp(1), Family::Sp(2), Family::Sp(3), Family::Sp(4),
        Family::SoStar(3), Family::SoStar(4), Family::SoStar(5),
        Family::So2(1), Family::So2(3), Family::So2(4), Family::So2(5),
    ];
    for fam in families {
        let t = Instant::now();
        let r = match cached_realization(&fam) { Ok(r) => r, Err(e) => { println!("{fam}: BUILD ERROR {e}"); continue; } };
        let invs = match standard_involutions(&r) { Ok(i) => i, Err(e) => { println!("{fam}: INV ERROR {e}"); continue; } };
        // group records by class
        let mut by_class: BTreeMap<String, Vec<&liewedge::realize::InvolutionRecord>> = BTreeMap::new();
        for i in &invs { by_class.entry(i.class.clone()).or_default().push(i); }
        for (class, recs) in &by_class {
            let mode = if class == "cayley" { EnumerationMode::WithSplits } else { EnumerationMode::PartialSums };
            match enumerate_table(&r, recs, mode) {
                Ok(cases) => {
                    let mut isos: Vec<String> = cases.iter().map(|c| c.iso.to_string()).filter(|s| s != "0").collect();
                    isos.sort(); isos.dedup();
                    println!("{fam} [{class} -> {}]: {{{}}}", recs[0].fixed_label, isos.join(", "));
                }
                Err(e) => println!("{fam} [{class}]: ENUM ERROR {e}"),
            }
            if !r.is_tube() {
                match nontube_restriction_check(&r, recs[0]) {
                    Ok((a, b)) => println!("    table4: g_t = {a}, g_t^tau = {b}"),
                    Err(e) => println!("    table4 ERROR: {e}"),
                }
            }
        }
        println!("  ({fam}: {:?})", t.elapsed());
    }
}
