use liewedge::{jordan, kkt};
use std::time::Instant;

fn main() {
    let t0 = Instant::now();
    let (v, _frame) = jordan::herm_o3();
    println!("herm_o3 built+validated: {:?}", t0.elapsed());
    let t1 = Instant::now();
    let ders = kkt::derivation_algebra(&v);
    println!("derivations: {} dims in {:?}", ders.len(), t1.elapsed());
    let t2 = Instant::now();
    let k = kkt::kkt_lie(&v).unwrap();
    println!("kkt_lie (incl. jacobi + B_theta): dim {} in {:?}", k.algebra.dim, t2.elapsed());
    println!("total: {:?}", t0.elapsed());
}
