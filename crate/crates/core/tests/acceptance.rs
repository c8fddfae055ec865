//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

mod common;

use std::time::{Duration, Instant};

use num_complex::Complex64 as C;
use qpath::cli::{parse_command, run_command};
use qpath::dsl::{parse, parse_bytes};
use qpath::linalg::random::{
    random_matrix, random_orthonormal_basis, random_state, random_unitary,
};
use qpath::linalg::{ket_bra, ComplexMatrix, QuantumState};
use qpath::measure::{gates, hadamard_test, teleport_check, Part};
use qpath::network::{
    amplitude_by_surgery, amplitude_via_density, contract_exhaustive, trace_network, Leg, LegRef,
    Network, Tensor,
};
use qpath::paths::{Output, PathDiagram};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Check = fn() -> Outcome;

fn ensure(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn mz_layers() -> Vec<ComplexMatrix> {
    vec![gates::hadamard(), gates::mirror(), gates::hadamard()]
}

/// `<x|U|y>` by explicit loops.
fn sandwich(x: &QuantumState, u: &ComplexMatrix, y: &QuantumState) -> C {
    let mut acc = C::new(0.0, 0.0);
    for i in 0..u.rows() {
        for j in 0..u.cols() {
            acc += x.get(i).conj() * u.get(i, j) * y.get(j);
        }
    }
    acc
}

fn mach_zehnder_identity() -> Outcome {
    let src = std::fs::read_to_string(common::root().join("data/mz.qpd")).unwrap();
    let argv = ["eval", "--circuit", "mz", "--input", "0"];
    let command = parse_command(argv).unwrap();
    let mut best = Duration::MAX;
    for _ in 0..50 {
        let start = Instant::now();
        let doc = parse(&src).unwrap();
        let out = run_command(&doc, &command).unwrap();
        best = best.min(start.elapsed());
        std::hint::black_box(out);
    }
    let doc = parse(&src).unwrap();
    let state = PathDiagram::new(doc.circuit("mz").unwrap(), 0)
        .unwrap()
        .evolve();
    let dev0 = (state.get(0) - C::new(1.0, 0.0)).norm();
    let dev1 = state.get(1).norm();
    ensure(
        dev0 <= 1e-10 && dev1 <= 1e-10 && best < Duration::from_millis(1),
        format!("|a0-1|={dev0:.1e} |a1|={dev1:.1e} parse+eval={best:?}"),
    )
}

fn path_counts() -> Outcome {
    let fixed = PathDiagram::new(mz_layers(), 0)
        .unwrap()
        .with_output(Output::Fixed(1))
        .unwrap()
        .enumerate_paths()
        .unwrap()
        .len();
    let free = PathDiagram::new(mz_layers(), 0)
        .unwrap()
        .enumerate_paths()
        .unwrap()
        .len();
    ensure(
        fixed == 4 && free == 8,
        format!("fixed-output={fixed} free-output={free}"),
    )
}

fn path_theorem_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let start = Instant::now();
    let mut worst = 0.0f64;
    let mut checked = 0usize;
    for case in 0..500 {
        let d = [2, 3, 5][case % 3];
        let l = rng.random_range(1..=4);
        let layers: Vec<ComplexMatrix> = (0..l).map(|_| random_unitary(&mut rng, d)).collect();
        // Oracle: explicit product U_L ... U_1.
        let mut product = ComplexMatrix::identity(d);
        for u in &layers {
            product = u.matmul(&product).unwrap();
        }
        for i in 0..d {
            let diagram = PathDiagram::new(layers.clone(), i).unwrap();
            for j in 0..d {
                let dev = (diagram.path_sum_amplitude(j).unwrap() - product.get(j, i)).norm();
                worst = worst.max(dev);
                checked += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    ensure(
        worst <= 1e-10 && elapsed < Duration::from_secs(30),
        format!("{checked} amplitudes, max dev={worst:.2e}, {elapsed:.2?}"),
    )
}

fn destructive_interference() -> Outcome {
    let report = PathDiagram::new(mz_layers(), 0)
        .unwrap()
        .interference_report(1)
        .unwrap();
    let mut nonzero: Vec<f64> = report
        .paths
        .iter()
        .map(|p| p.weight)
        .filter(|w| w.norm() > 1e-12)
        .map(|w| w.re)
        .collect();
    nonzero.sort_by(f64::total_cmp);
    let halves = nonzero.len() == 2
        && (nonzero[0] + 0.5).abs() <= 1e-12
        && (nonzero[1] - 0.5).abs() <= 1e-12;
    let sum = report.amplitude.norm();
    ensure(
        report.paths.len() == 4 && halves && sum <= 1e-12,
        format!(
            "paths={} nonzero={nonzero:?} |sum|={sum:.1e}",
            report.paths.len()
        ),
    )
}

fn hadamard_exactness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst = 0.0f64;
    for case in 0..200 {
        let d = [2, 4][case % 2];
        let u = random_unitary(&mut rng, d);
        let psi = random_state(&mut rng, d);
        let e = sandwich(&psi, &u, &psi);
        for (part, target) in [(Part::Real, e.re), (Part::Imag, e.im)] {
            let r = hadamard_test(&u, &psi, part, 1, 0).unwrap();
            worst = worst.max((r.exact_p0 - (0.5 + 0.5 * target)).abs());
        }
    }
    ensure(
        worst <= 1e-10,
        format!("400 branches, max |p0 - (1+x)/2|={worst:.2e}"),
    )
}

fn hadamard_estimation() -> Outcome {
    let z = ComplexMatrix::diagonal(&[C::new(1.0, 0.0), C::new(-1.0, 0.0)]);
    let cases = [("I", gates::identity(2)), ("Z", z), ("M", gates::mirror())];
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut details = Vec::new();
    let mut ok = true;
    for (i, (name, u)) in cases.iter().enumerate() {
        let psi = random_state(&mut rng, 2);
        let seed = 1000 + i as u64;
        let a = hadamard_test(u, &psi, Part::Real, 100_000, seed).unwrap();
        let b = hadamard_test(u, &psi, Part::Real, 100_000, seed).unwrap();
        let err = (a.estimate - sandwich(&psi, u, &psi).re).abs();
        ok &= err <= 0.02 && a == b;
        details.push(format!("{name}: err={err:.4}"));
    }
    ensure(ok, format!("{} (deterministic reruns)", details.join(", ")))
}

fn measurement_pipeline() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst = 0.0f64;
    let mut pairs = 0;
    for d in 2..=4 {
        for _ in 0..50 {
            let m = random_matrix(&mut rng, d, d);
            for a in 0..d {
                for b in 0..d {
                    let ka = QuantumState::basis(d, a).unwrap();
                    let kb = QuantumState::basis(d, b).unwrap();
                    let surgery = amplitude_by_surgery(&ka, &m, &kb).unwrap();
                    let density = amplitude_via_density(&ka, &kb, &m).unwrap();
                    let direct = m.get(a, b);
                    worst = worst
                        .max((surgery - density).norm())
                        .max((surgery - direct).norm())
                        .max((density - direct).norm());
                    pairs += 1;
                }
            }
        }
    }
    ensure(
        worst <= 1e-10,
        format!("{pairs} basis pairs, max pairwise dev={worst:.2e}"),
    )
}

fn trace_closure() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst = 0.0f64;
    for case in 0..50 {
        let d = 2 + case % 5;
        let m = random_matrix(&mut rng, d, d);
        let diag: C = (0..d).map(|i| m.get(i, i)).sum();
        let t = trace_network(&m)
            .unwrap()
            .contract()
            .unwrap()
            .as_scalar()
            .unwrap();
        worst = worst.max((t - diag).norm());
    }
    ensure(worst <= 1e-12, format!("50 matrices, max dev={worst:.2e}"))
}

fn teleportation() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut worst = 0.0f64;
    for case in 0..100 {
        let d = 2 + case % 2;
        let m = random_matrix(&mut rng, d, d);
        let phi = random_state(&mut rng, d);
        let r = teleport_check(&m, &phi).unwrap();
        for i in 0..d {
            let direct: C = (0..d).map(|j| m.get(i, j) * phi.get(j)).sum();
            worst = worst.max((r.network_result.get(i) - direct).norm());
        }
    }
    ensure(worst <= 1e-10, format!("100 cases, max dev={worst:.2e}"))
}

fn random_network(rng: &mut ChaCha8Rng) -> Network {
    let n = rng.random_range(1..=5);
    let mut net = Network::new();
    let mut legs = Vec::new();
    for node in 0..n {
        let rank = rng.random_range(0..=3);
        let mut tensor_legs = Vec::new();
        for l in 0..rank {
            tensor_legs.push(Leg::new(format!("l{l}"), rng.random_range(1..=3)));
        }
        let size: usize = tensor_legs.iter().map(|l| l.dim).product();
        let data = (0..size)
            .map(|_| C::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        for leg in &tensor_legs {
            legs.push((LegRef::new(format!("n{node}"), leg.name.clone()), leg.dim));
        }
        net.add_node(format!("n{node}"), Tensor::new(tensor_legs, data).unwrap())
            .unwrap();
    }
    // Shuffle, then greedily pair equal-dimension legs; leftovers stay free.
    for i in (1..legs.len()).rev() {
        let j = rng.random_range(0..=i);
        legs.swap(i, j);
    }
    let mut free = Vec::new();
    while let Some((a, da)) = legs.pop() {
        let partner = legs.iter().position(|(_, db)| *db == da);
        match partner {
            Some(p) if rng.random_bool(0.7) => {
                let (b, _) = legs.remove(p);
                net.connect(a, b).unwrap();
            }
            _ => free.push(a),
        }
    }
    for leg in free {
        net.expose(leg).unwrap();
    }
    net
}

fn contraction_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut worst = 0.0f64;
    let mut edges = 0;
    for _ in 0..200 {
        let net = random_network(&mut rng);
        edges += net.edges().len();
        let fast = net.contract().unwrap();
        let slow = contract_exhaustive(&net).unwrap();
        match fast.max_abs_diff(&slow) {
            Some(dev) => worst = worst.max(dev),
            None => return Err("leg layout differs from the oracle".into()),
        }
    }
    ensure(
        worst <= 1e-9,
        format!("200 networks ({edges} edges), max dev={worst:.2e}"),
    )
}

fn algebraic_identities() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let (mut proj, mut complete, mut unitary) = (0.0f64, 0.0f64, 0.0f64);
    for case in 0..100 {
        let d = 2 + case % 4;
        let a = random_state(&mut rng, d);
        let b = random_state(&mut rng, d);
        let p = ket_bra(&a, &b);
        let lhs = p.matmul(&p).unwrap();
        let rhs = p.scale(sandwich(&b, &ComplexMatrix::identity(d), &a));
        proj = proj.max(lhs.max_abs_diff(&rhs).unwrap());

        let basis = random_orthonormal_basis(&mut rng, d);
        let mut sum = ComplexMatrix::zeros(d, d);
        for c in &basis {
            sum = sum.add(&ket_bra(c, c)).unwrap();
        }
        complete = complete.max(sum.max_abs_diff(&ComplexMatrix::identity(d)).unwrap());

        let u = random_unitary(&mut rng, d);
        let (v, w) = (random_state(&mut rng, d), random_state(&mut rng, d));
        let (uv, uw) = (u.apply(&v).unwrap(), u.apply(&w).unwrap());
        unitary = unitary.max((uv.inner(&uw).unwrap() - v.inner(&w).unwrap()).norm());
    }
    ensure(
        proj <= 1e-10 && complete <= 1e-10 && unitary <= 1e-9,
        format!("P^2={proj:.1e} completeness={complete:.1e} inner={unitary:.1e}"),
    )
}

fn fuzz_input(rng: &mut ChaCha8Rng, seeds: &[Vec<u8>]) -> Vec<u8> {
    match rng.random_range(0..3) {
        0 => {
            let n = rng.random_range(0..256);
            (0..n).map(|_| rng.random()).collect()
        }
        1 => {
            const ALPHABET: &[u8] = b"dimgatestecircuitnodefree=[],.:->#01i/sqrt2+-e \n\r\t";
            let n = rng.random_range(0..256);
            (0..n)
                .map(|_| ALPHABET[rng.random_range(0..ALPHABET.len())])
                .collect()
        }
        _ => {
            let mut s = seeds[rng.random_range(0..seeds.len())].clone();
            for _ in 0..rng.random_range(1..8) {
                if s.is_empty() {
                    break;
                }
                let i = rng.random_range(0..s.len());
                match rng.random_range(0..3) {
                    0 => s[i] = rng.random(),
                    1 => {
                        s.remove(i);
                    }
                    _ => s.insert(i, rng.random()),
                }
            }
            s
        }
    }
}

fn parser_robustness() -> Outcome {
    let seeds: Vec<Vec<u8>> = ["mz.qpd", "hadamard.qpd"]
        .iter()
        .map(|f| std::fs::read(common::root().join("data").join(f)).unwrap())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let (mut crashes, mut unpositioned, mut rejected) = (0, 0, 0);
    for _ in 0..100_000 {
        let input = fuzz_input(&mut rng, &seeds);
        let lines = input.split(|&b| b == b'\n').count();
        match std::panic::catch_unwind(|| parse_bytes(&input)) {
            Err(_) => crashes += 1,
            Ok(Ok(_)) => {}
            Ok(Err(diags)) => {
                rejected += 1;
                if diags.is_empty()
                    || diags
                        .iter()
                        .any(|d| d.line == 0 || d.column == 0 || d.line > lines)
                {
                    unpositioned += 1;
                }
            }
        }
    }
    let golden_failures = common::check_goldens();
    ensure(
        crashes == 0 && unpositioned == 0 && golden_failures.is_empty(),
        format!(
            "100000 inputs ({rejected} rejected), crashes={crashes}, unpositioned={unpositioned}, \
             goldens {}/{} equal{}",
            common::CASES.len() - golden_failures.len(),
            common::CASES.len(),
            if golden_failures.is_empty() {
                String::new()
            } else {
                format!(" {golden_failures:?}")
            }
        ),
    )
}

fn main() {
    let criteria: [(&str, Check); 12] = [
        ("Mach-Zehnder identity", mach_zehnder_identity),
        ("path counts", path_counts),
        ("path theorem suite", path_theorem_suite),
        ("destructive interference", destructive_interference),
        ("Hadamard test exactness", hadamard_exactness),
        ("Hadamard test estimation", hadamard_estimation),
        ("measurement pipeline", measurement_pipeline),
        ("trace closure", trace_closure),
        ("teleportation identity", teleportation),
        ("contraction oracle", contraction_oracle),
        ("algebraic identities", algebraic_identities),
        ("parser robustness", parser_robustness),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|payload| {
            let msg = payload
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
