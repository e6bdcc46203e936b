use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use dessins::cache::load_or_build_window;
use dessins::canon::canonical_key;
use dessins::dessin::DEFAULT_MONODROMY_BOUND;
use dessins::dot::export_dot;
use dessins::enumerate::{enumerate_exact_with, EnumerationConfig};
use dessins::exec::configure_threads;
use dessins::filtration::{level_span, FiltrationKind};
use dessins::linalg::{format_fraction, int};
use dessins::{
    canonical_form, compare_levels, expansion, product, quotient_dimension, vector_combine, BasisWindow,
    CanonicalKey, Dessin, Error, Exec, Mode, Passport, SparseVector, WindowOptions,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::{Cli, Command, Format, Kind, MAX_ENUMERATION_EDGES, MAX_LEVEL, MAX_OPTIONAL_EDGES, MAX_PRODUCT_EDGES, MAX_WINDOW};

type CmdResult = Result<String, Box<dyn std::error::Error>>;

fn bound(what: &'static str, value: usize, limit: usize) -> Result<(), Error> {
    if value > limit {
        return Err(Error::BoundExceeded { what, value, limit });
    }
    Ok(())
}

fn read_dessin(path: &Path) -> Result<Dessin, Box<dyn std::error::Error>> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()).into())
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn exec_of(cli: &Cli) -> Exec {
    match cli.threads {
        Some(1) => Exec::Sequential,
        Some(n) => {
            if !configure_threads(n) {
                log::warn!("could not size worker pool to {n} threads");
            }
            Exec::Parallel
        }
        None => Exec::Parallel,
    }
}

fn build_window(cli: &Cli, max_edges: usize, exec: Exec) -> Result<BasisWindow, Error> {
    bound("window", max_edges, MAX_WINDOW)?;
    let options = WindowOptions {
        mode: Mode::All,
        include_empty: !cli.no_empty,
        enumeration: EnumerationConfig {
            bound: MAX_ENUMERATION_EDGES,
            exec,
        },
    };
    load_or_build_window(cli.cache_dir.as_deref(), max_edges, options)
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

fn vector_text(v: &SparseVector) -> String {
    if v.is_zero() {
        return "0\n".into();
    }
    v.iter()
        .map(|(k, c)| format!("{}\t{k}\n", format_fraction(c)))
        .collect()
}

fn vector_csv(v: &SparseVector) -> String {
    let mut out = String::from("key,coeff\n");
    for (k, c) in v.iter() {
        let _ = writeln!(out, "{k},{}", format_fraction(c));
    }
    out
}

#[derive(Serialize)]
struct EnumerateOut<'a> {
    edges: usize,
    mode: Mode,
    count: usize,
    keys: &'a [CanonicalKey],
}

#[derive(Serialize)]
struct CanonOut {
    key: CanonicalKey,
    dessin: Dessin,
}

#[derive(Serialize)]
struct InvariantsOut {
    key: CanonicalKey,
    edges: usize,
    passport: Passport,
    euler_characteristic: i64,
    genus: Option<usize>,
    monodromy_order: Option<usize>,
}

#[derive(Serialize)]
struct DeleteOut {
    dessin: Dessin,
    survivor_map: Vec<(usize, usize)>,
}

#[derive(Serialize)]
struct FiltrationOut {
    window: usize,
    level: usize,
    kind: FiltrationKind,
    dim: usize,
    rank: usize,
    generators: usize,
    rows: Vec<SparseVector>,
}

#[derive(Serialize)]
struct QuotientRow {
    window: usize,
    level: usize,
    rank_level: usize,
    rank_next: usize,
    quotient_dimension: usize,
    classes_with_level_edges: usize,
    spanning_claim_holds: bool,
}

#[derive(Serialize)]
struct SelftestOut {
    seed: u64,
    samples: usize,
    conjugation_violations: usize,
    recurrence_violations: usize,
    product_violations: usize,
}

pub fn run(cli: &Cli) -> CmdResult {
    let exec = exec_of(cli);
    match &cli.command {
        Command::Enumerate { edges, connected } => {
            bound("edges", *edges, MAX_ENUMERATION_EDGES)?;
            let mode = if *connected { Mode::Connected } else { Mode::All };
            let keys = match &cli.cache_dir {
                Some(dir) => match dessins::cache::load_level(dir, *edges, mode)? {
                    Some(keys) => keys,
                    None => {
                        let keys = enumerate_exact_with(*edges, mode, EnumerationConfig { bound: MAX_ENUMERATION_EDGES, exec })?;
                        dessins::cache::save_level(dir, *edges, mode, &keys)?;
                        keys
                    }
                },
                None => enumerate_exact_with(*edges, mode, EnumerationConfig { bound: MAX_ENUMERATION_EDGES, exec })?,
            };
            Ok(match cli.format {
                Format::Json => json(&EnumerateOut {
                    edges: *edges,
                    mode,
                    count: keys.len(),
                    keys: &keys,
                }),
                Format::Text => keys.iter().map(|k| format!("{k}\n")).collect(),
                Format::Csv => {
                    let mut out = String::from("index,key,black,white,face,genus\n");
                    for (i, k) in keys.iter().enumerate() {
                        let p = k.to_dessin().passport();
                        let _ = writeln!(
                            out,
                            "{i},{k},{},{},{},{}",
                            join(&p.black_degrees),
                            join(&p.white_degrees),
                            join(&p.face_degrees),
                            join(&p.genus_list)
                        );
                    }
                    out
                }
            })
        }

        Command::Canon { file } => {
            let (key, dessin) = canonical_form(&read_dessin(file)?);
            Ok(match cli.format {
                Format::Json => json(&CanonOut { key, dessin }),
                Format::Text => format!("{key}\n"),
                Format::Csv => format!("key\n{key}\n"),
            })
        }

        Command::Invariants { file } => {
            let d = read_dessin(file)?;
            let connected = d.is_connected();
            let out = InvariantsOut {
                key: canonical_key(&d),
                edges: d.edge_count(),
                passport: d.passport(),
                euler_characteristic: d.euler_characteristic(),
                genus: connected.then(|| d.genus()).transpose()?,
                monodromy_order: (connected && d.edge_count() <= DEFAULT_MONODROMY_BOUND)
                    .then(|| d.monodromy_order(DEFAULT_MONODROMY_BOUND))
                    .transpose()?,
            };
            let opt = |x: Option<usize>| x.map_or_else(|| "-".to_owned(), |v| v.to_string());
            Ok(match cli.format {
                Format::Json => json(&out),
                Format::Text => format!(
                    "key: {}\nedges: {}\nblack: {}\nwhite: {}\nfaces: {}\ncomponents: {}\ngenera: {}\ngenus: {}\nmonodromy order: {}\n",
                    out.key,
                    out.edges,
                    join(&out.passport.black_degrees),
                    join(&out.passport.white_degrees),
                    join(&out.passport.face_degrees),
                    out.passport.component_count,
                    join(&out.passport.genus_list),
                    opt(out.genus),
                    opt(out.monodromy_order),
                ),
                Format::Csv => format!(
                    "key,edges,black,white,face,components,genera,genus,monodromy_order\n{},{},{},{},{},{},{},{},{}\n",
                    out.key,
                    out.edges,
                    join(&out.passport.black_degrees),
                    join(&out.passport.white_degrees),
                    join(&out.passport.face_degrees),
                    out.passport.component_count,
                    join(&out.passport.genus_list),
                    opt(out.genus),
                    opt(out.monodromy_order),
                ),
            })
        }

        Command::Delete { file, edges } => {
            let d = read_dessin(file)?;
            let (rest, map) = d.delete_edges(edges)?;
            let survivor_map: Vec<(usize, usize)> = map
                .iter()
                .enumerate()
                .filter_map(|(old, new)| new.map(|n| (old, n)))
                .collect();
            Ok(match cli.format {
                Format::Json => json(&DeleteOut {
                    dessin: rest,
                    survivor_map,
                }),
                Format::Text => {
                    let mut out = format!(
                        "sigma0: {:?}\nsigma1: {:?}\n",
                        rest.sigma0().images(),
                        rest.sigma1().images()
                    );
                    for (old, new) in survivor_map {
                        let _ = writeln!(out, "{old} -> {new}");
                    }
                    out
                }
                Format::Csv => {
                    let mut out = String::from("original,new\n");
                    for (old, new) in survivor_map {
                        let _ = writeln!(out, "{old},{new}");
                    }
                    out
                }
            })
        }

        Command::Expand { file, optional } => {
            bound("optional edges", optional.len(), MAX_OPTIONAL_EDGES)?;
            let v = expansion(&read_dessin(file)?, optional)?;
            Ok(match cli.format {
                Format::Json => json(&v),
                Format::Text => vector_text(&v),
                Format::Csv => vector_csv(&v),
            })
        }

        Command::Product { a, b } => {
            let (a, b) = (read_dessin(a)?, read_dessin(b)?);
            bound("product edges", a.edge_count() * b.edge_count(), MAX_PRODUCT_EDGES)?;
            let p = product(&a, &b);
            let key = canonical_key(&p);
            Ok(match cli.format {
                Format::Json => json(&CanonOut { key, dessin: p }),
                Format::Text => format!("{key}\n"),
                Format::Csv => format!("key\n{key}\n"),
            })
        }

        Command::Filtration { window, level, kind } => {
            bound("level", *level, MAX_LEVEL)?;
            let w = build_window(cli, *window, exec)?;
            let kind = match kind {
                Kind::Dessin => FiltrationKind::Dessin,
                Kind::Belyi => FiltrationKind::Belyi,
            };
            let span = level_span(&w, kind, *level, exec);
            log::info!("{kind:?} level {level}: {:?}", span.elapsed);
            let out = FiltrationOut {
                window: *window,
                level: *level,
                kind,
                dim: w.len(),
                rank: span.span.rank(),
                generators: span.generators,
                rows: span.span.rows().to_vec(),
            };
            let kind_name = match kind {
                FiltrationKind::Dessin => "dessin",
                FiltrationKind::Belyi => "belyi",
            };
            Ok(match cli.format {
                Format::Json => json(&out),
                Format::Text => format!(
                    "{kind_name} level {} on window {}: rank {} of dim {} ({} generators)\n",
                    out.level, out.window, out.rank, out.dim, out.generators
                ),
                Format::Csv => format!(
                    "window,level,kind,dim,rank,generators\n{},{},{kind_name},{},{},{}\n",
                    out.window, out.level, out.dim, out.rank, out.generators
                ),
            })
        }

        Command::Compare { window, level } => {
            bound("level", *level, MAX_LEVEL)?;
            if *level == 0 {
                return Err("compare needs --level >= 1".into());
            }
            let w = build_window(cli, *window, exec)?;
            let r = compare_levels(&w, *level, exec);
            log::info!("compare finished in {:?}", r.elapsed);
            Ok(match cli.format {
                Format::Json => json(&r),
                Format::Csv => format!(
                    "window,level,dim,rank_dessin,rank_belyi_inner,belyi_in_dessin,dessin_in_belyi_inner,stable_at_prev_window,generators_dessin,generators_belyi\n{},{},{},{},{},{},{},{},{},{}\n",
                    r.window,
                    r.level,
                    r.dim,
                    r.rank_dessin,
                    r.rank_belyi_inner,
                    r.belyi_in_dessin,
                    r.dessin_in_belyi_inner,
                    r.stable_at_prev_window,
                    r.generators_dessin,
                    r.generators_belyi
                ),
                Format::Text => {
                    let mut out = format!(
                        "window {} level {} dim {}\n  dessin span rank {} ({} generators)\n  product span rank {} ({} generators)\n  product in dessin: {}\n  dessin in product: {}\n  stable at previous window: {}\n",
                        r.window,
                        r.level,
                        r.dim,
                        r.rank_dessin,
                        r.generators_dessin,
                        r.rank_belyi_inner,
                        r.generators_belyi,
                        r.belyi_in_dessin,
                        r.dessin_in_belyi_inner,
                        r.stable_at_prev_window
                    );
                    for (i, wit) in r.witnesses.iter().enumerate() {
                        let _ = writeln!(out, "  witness {i}:");
                        for line in vector_text(wit).lines() {
                            let _ = writeln!(out, "    {line}");
                        }
                    }
                    out
                }
            })
        }

        Command::Quotients { window, max_level } => {
            bound("level", *max_level, MAX_LEVEL)?;
            let w = build_window(cli, *window, exec)?;
            let rows: Vec<QuotientRow> = (0..=*max_level)
                .map(|d| {
                    let q = quotient_dimension(&w, d, exec);
                    QuotientRow {
                        window: *window,
                        level: q.level,
                        rank_level: q.rank_level,
                        rank_next: q.rank_next,
                        quotient_dimension: q.quotient_dimension,
                        classes_with_level_edges: q.classes_with_level_edges,
                        spanning_claim_holds: q.spanning_claim_holds,
                    }
                })
                .collect();
            Ok(match cli.format {
                Format::Json => json(&rows),
                Format::Csv | Format::Text => {
                    let sep = if cli.format == Format::Csv { "," } else { "\t" };
                    let mut out = ["window", "level", "rank_level", "rank_next", "quotient_dimension", "classes_with_level_edges", "spanning_claim_holds"].join(sep);
                    out.push('\n');
                    for r in rows {
                        let cells = [
                            r.window.to_string(),
                            r.level.to_string(),
                            r.rank_level.to_string(),
                            r.rank_next.to_string(),
                            r.quotient_dimension.to_string(),
                            r.classes_with_level_edges.to_string(),
                            r.spanning_claim_holds.to_string(),
                        ];
                        out.push_str(&cells.join(sep));
                        out.push('\n');
                    }
                    out
                }
            })
        }

        Command::ExportDot { file } => Ok(export_dot(&read_dessin(file)?)),

        Command::Selftest { seed, samples } => {
            let out = selftest(*seed, *samples);
            Ok(match cli.format {
                Format::Json => json(&out),
                Format::Text => format!(
                    "seed {} samples {}: conjugation {} recurrence {} product {} violations\n",
                    out.seed, out.samples, out.conjugation_violations, out.recurrence_violations, out.product_violations
                ),
                Format::Csv => format!(
                    "seed,samples,conjugation_violations,recurrence_violations,product_violations\n{},{},{},{},{}\n",
                    out.seed, out.samples, out.conjugation_violations, out.recurrence_violations, out.product_violations
                ),
            })
        }
    }
}

fn random_dessin(n: usize, rng: &mut ChaCha8Rng) -> Dessin {
    let mut a: Vec<usize> = (0..n).collect();
    let mut b = a.clone();
    a.shuffle(rng);
    b.shuffle(rng);
    Dessin::from_images(a, b).expect("shuffles are bijections")
}

fn selftest(seed: u64, samples: usize) -> SelftestOut {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = SelftestOut {
        seed,
        samples,
        conjugation_violations: 0,
        recurrence_violations: 0,
        product_violations: 0,
    };
    for _ in 0..samples {
        let n = rng.gen_range(0..=7);
        let d = random_dessin(n, &mut rng);
        let pi = dessins::Permutation::from_images(random_dessin(n, &mut rng).sigma0().images().to_vec())
            .expect("bijection");
        if canonical_key(&d.conjugate_by(&pi)) != canonical_key(&d) {
            out.conjugation_violations += 1;
        }

        if n > 0 && n <= 6 {
            let mut s: Vec<usize> = (0..n).collect();
            s.shuffle(&mut rng);
            s.truncate(rng.gen_range(1..=n));
            let e = s[0];
            let rest: Vec<usize> = s[1..].to_vec();
            let (smaller, map) = d.delete_edges(&[e]).expect("in range");
            let mapped: Vec<usize> = rest.iter().map(|&f| map[f].expect("survivor")).collect();
            let lhs = expansion(&d, &s).expect("in range");
            let rhs = vector_combine(
                &int(1),
                &expansion(&d, &rest).expect("in range"),
                &int(-1),
                &expansion(&smaller, &mapped).expect("in range"),
            );
            if lhs != rhs {
                out.recurrence_violations += 1;
            }
        }

        let (a, b) = (random_dessin(rng.gen_range(0..=5), &mut rng), random_dessin(rng.gen_range(0..=5), &mut rng));
        if canonical_key(&product(&a, &b)) != canonical_key(&product(&b, &a))
            || canonical_key(&product(&Dessin::single_edge(), &a)) != canonical_key(&a)
        {
            out.product_violations += 1;
        }
    }
    out
}
