def pytest_terminal_summary(terminalreporter):
    lines = []
    for outcome in ("passed", "failed", "skipped"):
        for rep in terminalreporter.stats.get(outcome, []):
            props = dict(getattr(rep, "user_properties", []) or [])
            if "criterion" not in props or rep.when not in ("call", "setup"):
                continue
            if outcome == "skipped" and rep.when != "setup" and rep.when != "call":
                continue
            tag = {"passed": "PASS", "failed": "FAIL", "skipped": "SKIP"}[outcome]
            lines.append((props["criterion"], f"{tag}  {props['criterion']:>2}. {props.get('title', '')}  [{props.get('detail', '')}]"))
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(lines, key=lambda t: int(t[0])):
        terminalreporter.write_line(line)
