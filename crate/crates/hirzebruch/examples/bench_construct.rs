use hirzebruch::exactpoly::rat;
use hirzebruch::profile::construct_positive_profile;
use std::time::Instant;

fn main() {
    for (n, k, cn, cd) in [
        (2u32, 1u32, 1i64, 1i64),   // 0.5 n/k
        (2, 1, 9, 5),               // 0.9 n/k
        (3, 1, 3, 2),
        (3, 1, 27, 10),
        (3, 2, 3, 4),
        (3, 2, 27, 20),
        (4, 3, 2, 3),
        (4, 3, 6, 5),
    ] {
        let c = rat(cn, cd);
        let t0 = Instant::now();
        match construct_positive_profile(n, k, &c) {
            Ok((prof, cert)) => {
                let deg = prof.phi.degree().unwrap();
                println!(
                    "({n},{k}) c={cn}/{cd}: degree {deg} certified={} in {:?}",
                    cert.is_positive(),
                    t0.elapsed()
                );
            }
            Err(e) => println!("({n},{k}) c={cn}/{cd}: ERROR {e} in {:?}", t0.elapsed()),
        }
    }
}
