use liewedge::catalog::cached_realization;
use liewedge::realize::{standard_involutions, Family};
use liewedge::wedge::{enumerate_table, EnumerationMode};
use std::time::Instant;

fn main() {
    // so(2,5): the split class (both orientations)
    let r = cached_realization(&Family::So2(5)).unwrap();
    let invs = standard_involutions(&r).unwrap();
    let split: Vec<_> = invs.iter().filter(|i| i.class == "split:2").collect();
    let cases = enumerate_table(&r, &split, EnumerationMode::PartialSums).unwrap();
    let mut isos: Vec<String> = cases.iter().map(|c| c.iso.to_string()).filter(|s| s != "0").collect();
    isos.sort(); isos.dedup();
    println!("so(2,5) split:2 -> {{{}}}", isos.join(", "));

    // e7(-25): Cayley enumeration (criterion 2)
    let t = Instant::now();
    let r = cached_realization(&Family::E7).unwrap();
    println!("e7 built in {:?}: dim {}, rank {}, middle mult {:?}", t.elapsed(), r.algebra.dim, r.rank, r.pattern.middle_mult);
    let t = Instant::now();
    let invs = standard_involutions(&r).unwrap();
    println!("involutions in {:?}: {:?}", t.elapsed(), invs.iter().map(|i| (&i.class, &i.fixed_label)).collect::<Vec<_>>());
    for inv in &invs {
        let t = Instant::now();
        let mode = if inv.is_cayley { EnumerationMode::PartialSums } else { EnumerationMode::PartialSums };
        let cases = enumerate_table(&r, &[inv], mode).unwrap();
        let mut isos: Vec<String> = cases.iter().map(|c| c.iso.to_string()).filter(|s| s != "0").collect();
        isos.sort(); isos.dedup();
        println!("e7 [{}] in {:?}: {{{}}}", inv.class, t.elapsed(), isos.join(", "));
    }
}
