"""Command-line entry point: python -m app.main <subcommand> ..."""
import argparse
import logging
import math
import sys
from typing import List, Optional

from .acceptance import SUITES, run_suite
from .config import OracleConfig, PipelineConfig, settings
from .errors import (
    EXIT_ACCEPTANCE,
    EXIT_OK,
    EXIT_PRECISION,
    EXIT_USAGE,
    AcceptanceFailure,
    ConfigError,
    DomainError,
    PrecisionError,
)
from .hecke import PrimeFactorization, expand_lambda_power, h1, h2
from .modforms import (
    delta_lambdas,
    eigenbasis_spectrum,
    fourth_moment,
    hecke_eigenforms,
    miller_basis,
    petersson_inner,
    spectral_data,
)
from .oracles import LEMMAS, verify_lemma_instance
from .pipeline import (
    PartitionParams,
    build_coefficients,
    chain_validator,
    classify_family,
    exceptional_measure_bound,
    final_bound_exponent,
    gaussian_heuristic_prediction,
    generic_exponential_moment,
    integer_size_check,
    main_contribution_factor,
    markov_comparison,
    markov_moment_bound,
    partition_params,
    primes_squared_tail_bound,
    sound_margins,
    sym_side_by_side,
    techn_factor,
)
from .satotate import sample_family
from .storage import (
    BOUND_COLUMNS,
    LVALUE_COLUMNS,
    MARGIN_COLUMNS,
    ReportStore,
    TableWriter,
    chain_rows,
    dumps,
    eigenform_to_dict,
    qexpansion_to_dict,
)

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
MF_ACTIONS = ("basis", "eigen", "petersson", "fourth-moment", "watson")
PIPELINE_ACTIONS = ("classify", "sound", "chain", "markov")


class LabArgumentParser(argparse.ArgumentParser):
    """Usage errors become ConfigError instead of SystemExit"""

    def error(self, message):
        raise ConfigError(f"{self.prog}: {message}")


def configure_logging(level: str):
    handlers = [logging.StreamHandler(sys.stderr)]
    if settings.log_file:
        handlers.append(logging.FileHandler(settings.log_file))
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.INFO),
        format=LOG_FORMAT,
        handlers=handlers,
        force=True,
    )


def build_parser() -> LabArgumentParser:
    parser = LabArgumentParser(prog="lab", description="Fourth-moment experiments for level-one eigenforms")
    parser.add_argument("--output-dir", help=f"artifact directory (default {settings.output_dir}, env LAB_OUTPUT_DIR)")
    parser.add_argument("--threads", type=int, help="worker threads, 0 for all cores")
    parser.add_argument("--log-level", default=settings.log_level)
    sub = parser.add_subparsers(dest="command", parser_class=LabArgumentParser)
    sub.required = True

    hecke = sub.add_parser("hecke", help="lambda(p)^alpha as a combination of lambda(p^m)")
    hecke.add_argument("action", choices=("expand",))
    hecke.add_argument("--alpha", type=int, required=True)

    moments = sub.add_parser("moments", help="h1/h2 of a factorization such as 2^4*3^2")
    moments.add_argument("which", choices=("h1", "h2"))
    moments.add_argument("--n", required=True)

    oracle = sub.add_parser("oracle", help="exact instance of a combinatorial lemma")
    oracle.add_argument("--lemma", choices=LEMMAS, required=True)
    oracle.add_argument("--config")
    oracle.add_argument("--strategy", choices=("auto", "direct", "partition"), default="auto")

    simulate = sub.add_parser("simulate", help="synthetic Sato-Tate family")
    simulate.add_argument("--x", type=float, required=True)
    simulate.add_argument("--forms", type=int, required=True)
    simulate.add_argument("--seed", type=int, default=settings.seed)
    simulate.add_argument("--report", choices=("heuristics",))

    mf = sub.add_parser("mf", help="level-one modular forms")
    mf.add_argument("action", choices=MF_ACTIONS)
    mf.add_argument("--weight", type=int, required=True)
    mf.add_argument("--ncoeffs", type=int, default=settings.ncoeffs)
    mf.add_argument("--quad-depth", type=int)
    mf.add_argument("--tol", type=float)

    pipeline = sub.add_parser("pipeline", help="moment pipeline evaluators")
    pipeline.add_argument("action", choices=PIPELINE_ACTIONS)
    pipeline.add_argument("--config")

    accept = sub.add_parser("accept", help="acceptance battery")
    accept.add_argument("--suite", choices=SUITES, default="quick")
    accept.add_argument("--seed", type=int)
    return parser


def emit(document):
    print(dumps(document))


def cmd_hecke(args, store: ReportStore):
    expansion = expand_lambda_power(args.alpha)
    terms = {str(m): c for m, c in sorted(expansion.terms.items())}
    document = {
        "alpha": args.alpha,
        "terms": terms,
        "degenerate_value": expansion.degenerate_value(),
        "bounds_hold": expansion.check_bounds(),
    }
    store.write(f"hecke_expand_{args.alpha}", document)
    for m, c in sorted(expansion.terms.items()):
        print(f"lambda(p^{m}): {c}")


def cmd_moments(args, store: ReportStore):
    n = PrimeFactorization.parse(args.n)
    value = h1(n) if args.which == "h1" else h2(n)
    print(value)


def cmd_oracle(args, store: ReportStore):
    config = OracleConfig.from_file(args.config) if args.config else OracleConfig()
    report = verify_lemma_instance(args.lemma, config, args.strategy)
    store.write(f"oracle_{args.lemma}", report.to_record())
    emit(report.to_record())
    if not report.passed:
        logger.error(f"Lemma {args.lemma}: |lhs| exceeds the bound")
        raise AcceptanceFailure(f"lemma {args.lemma} instance fails its bound")


def cmd_simulate(args, store: ReportStore, tables: TableWriter):
    family = sample_family(args.x, args.forms, args.seed, threads=args.threads)
    tables.write_family("family", family)
    store.write("family_meta", family.metadata())
    if args.report == "heuristics":
        lambdas = delta_lambdas(int(args.x))
        log_x = math.log(args.x)
        l_value = eigenbasis_spectrum(12)[0].l_sym2
        techn, log_techn = techn_factor(lambdas, log_x)
        document = {
            "x": args.x,
            "gaussian": gaussian_heuristic_prediction(lambdas, args.x),
            "techn_factor": techn,
            "log_techn_factor": log_techn,
            "sym_square": sym_side_by_side(lambdas, l_value, log_x),
        }
        store.write("heuristics", document)
        emit(document)
    else:
        emit(family.metadata())


def cmd_mf(args, store: ReportStore, tables: TableWriter):
    k = args.weight
    if args.action == "basis":
        document = {"weight": k, "basis": [qexpansion_to_dict(f) for f in miller_basis(k, args.ncoeffs)]}
        store.write(f"basis_{k}", document)
        emit(document)

    elif args.action == "eigen":
        forms = hecke_eigenforms(k, args.ncoeffs)
        store.write(f"eigen_{k}", {"weight": k, "forms": [eigenform_to_dict(f) for f in forms]})
        rows = []
        for f in forms:
            for n in range(1, min(20, f.N) + 1):
                rows.append({
                    "form": f.index,
                    "n": n,
                    "a_n": int(f.a(n)) if f.rational else float(f.a(n)),
                    "lambda_n": f.lam(n),
                })
        columns = ["form", "n", "a_n", "lambda_n"]
        tables.write(f"eigen_{k}", rows, columns)
        print(tables.frame(rows, columns).to_string(index=False))

    elif args.action == "petersson":
        rows = []
        for f in hecke_eigenforms(k, args.ncoeffs):
            result = petersson_inner(f, f, args.tol, args.quad_depth)
            rows.append({"index": f.index, "norm": result})
        document = {"weight": k, "ncoeffs": args.ncoeffs, "norms": rows}
        store.write(f"petersson_{k}", document)
        emit(document)

    elif args.action == "fourth-moment":
        result = fourth_moment(k, tolerance=args.tol, depth=args.quad_depth, ncoeffs=args.ncoeffs)
        tables.write(f"l_values_{k}", [row.model_dump() for row in result.rows], LVALUE_COLUMNS)
        store.write(f"fourth_moment_{k}", result)
        emit(result)

    else:
        data = spectral_data(k, ncoeffs=args.ncoeffs)
        document = {
            "k": data.k,
            "norm": data.norm,
            "l_sym2": data.l_sym2,
            "spectrum": [
                {
                    "index": entry.form.index,
                    "norm": entry.norm.value,
                    "l_sym2": entry.l_sym2,
                    "l_sym2_euler": entry.l_sym2_euler,
                    "harmonic_weight": entry.harmonic_weight,
                }
                for entry in data.spectrum
            ],
            "moment": data.moment,
            "harmonic_measure": data.harmonic_measure,
            "measure_deviation": data.measure_deviation,
        }
        store.write(f"watson_{k}", document)
        emit(document)


def _params(config: PipelineConfig) -> PartitionParams:
    if config.log_loglog_k is not None:
        return PartitionParams.from_log_loglog(config.log_loglog_k, config.threshold_exponent)
    if config.log_k is None:
        raise ConfigError("pipeline config needs log_k or log_loglog_k")
    return partition_params(config.log_k, config.threshold_exponent)


def _lambda_f(config: PipelineConfig, limit: int):
    if config.lambda_f == "delta":
        return delta_lambdas(limit)
    if config.lambda_f == "eigen":
        return hecke_eigenforms(config.weight, config.ncoeffs)[0].lambdas_at_primes(limit)
    raise ConfigError(f"unknown lambda_f {config.lambda_f!r}; expected delta or eigen")


def cmd_pipeline(args, store: ReportStore, tables: TableWriter):
    config = PipelineConfig.from_file(args.config) if args.config else PipelineConfig()
    if args.action == "markov":
        if config.v is None or config.log_k is None:
            raise ConfigError("markov needs v and log_k")
        value, target, holds = markov_comparison()
        document = {
            "bound": markov_moment_bound(config.v, config.log_k),
            "comparison": {"value": value, "target": target, "holds": holds},
        }
        store.write("markov", document)
        emit(document)
        return

    if args.action == "chain":
        params = _params(config)
        report = chain_validator(params, config.chain_constant)
        size_lhs, size_rhs, size_holds = integer_size_check(params)
        final_value, final_negative = final_bound_exponent(params.loglog_k, config.chain_constant)
        dyadic = []
        for m in range(1, 21):
            contribution, target, holds = main_contribution_factor(m)
            dyadic.append({
                "m": m,
                "log_tail_bound": primes_squared_tail_bound(m, config.chain_constant),
                "log_main_factor": contribution,
                "target": target,
                "holds": holds,
            })
        document = {
            "partition": params.summary(),
            "chain": report,
            "exceptional_measure": exceptional_measure_bound(params, config.chain_constant),
            "integer_size": {"lhs": size_lhs, "rhs": size_rhs, "holds": size_holds},
            "final_bound": {"log_value": final_value, "negative": final_negative},
            "dyadic": dyadic,
        }
        tables.write("chain_bounds", chain_rows(report), BOUND_COLUMNS)
        store.write("chain", document)
        emit({"all_pass": report.all_pass, "failing": report.failing, "I": report.I})
        return

    if args.action == "classify":
        limit = int(config.x)
        lambda_f = _lambda_f(config, limit)
        params = _params(config)
        family = sample_family(config.x, config.forms, config.seed, threads=args.threads)
        coeffs = build_coefficients(params, lambda_f, prime_cap=limit)
        report = classify_family(family, coeffs, threads=args.threads)
        summary = report.summary()
        moments = []
        for i in range(1, params.I + 1):
            empirical, predicted = generic_exponential_moment(report, coeffs, i)
            moments.append({"i": i, "empirical": empirical, "predicted": predicted})
        document = {"partition": params.summary(), "family": family.metadata(), "summary": summary,
                    "exponential_moments": moments}
        counts = [{"set": label, "count": count} for label, count in summary["labels"].items()]
        counts += [{"set": f"P{m}", "count": count} for m, count in summary["p_sets"].items()]
        tables.write("classification", counts, ["set", "count"])
        store.write("classification", document)
        emit(summary)

    else:
        if config.log_k is None:
            raise ConfigError("sound needs log_k")
        if config.lambda_f == "delta" and config.weight != 12:
            raise ConfigError(f"lambda_f=delta is the weight 12 form, got weight {config.weight}")
        rows = sound_margins(config.weight, [config.x], config.log_k, ncoeffs=config.ncoeffs)
        document = {"x": config.x, "log_k": config.log_k, "weight": config.weight, "margins": rows}
        tables.write("margins", rows, MARGIN_COLUMNS)
        store.write("sound", document)
        emit(document)


def run(argv: Optional[List[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except ConfigError as e:
        print(str(e), file=sys.stderr)
        return EXIT_USAGE

    configure_logging(args.log_level)
    if args.threads is not None:
        settings.threads = args.threads
    output_dir = args.output_dir or settings.output_dir
    try:
        store = ReportStore(output_dir)
        tables = TableWriter(output_dir)
        if args.command == "hecke":
            cmd_hecke(args, store)
        elif args.command == "moments":
            cmd_moments(args, store)
        elif args.command == "oracle":
            cmd_oracle(args, store)
        elif args.command == "simulate":
            cmd_simulate(args, store, tables)
        elif args.command == "mf":
            cmd_mf(args, store, tables)
        elif args.command == "pipeline":
            cmd_pipeline(args, store, tables)
        else:
            run_suite(args.suite, output_dir=str(tables.output_dir / "acceptance"), seed=args.seed)
    except (ConfigError, DomainError) as e:
        logger.error(f"{args.command}: {e}")
        return EXIT_USAGE
    except AcceptanceFailure as e:
        logger.error(f"{args.command}: {e}")
        return EXIT_ACCEPTANCE
    except PrecisionError as e:
        logger.error(f"{args.command}: {e} (best value {e.best_value}, est. error {e.est_error})")
        return EXIT_PRECISION
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
