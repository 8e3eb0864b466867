import structlog


logger = structlog.getLogger("audit")


def log_solve(report, source):
    members = ",".join(str(i) for i in report.solution.sorted()) or "-"
    logger.info(f"Solved {source} with {report.method.value}: [{members}] weight {report.weight}")
    logger.info(
        f"Oracle calls {report.stats.oracle_calls}, {report.stats.millis:.1f} ms, "
        f"exhaustive {report.stats.exhaustive}"
    )


def log_verify(source, members, verdict, check="dcs"):
    members = ",".join(str(i) for i in sorted(members)) or "-"
    outcome = "holds" if verdict else "fails"
    logger.info(f"Check {check} on {source} for [{members}] {outcome}")
