"""imprior 명령행 진입점"""

import argparse
import asyncio
import logging
import sys
from typing import List, Optional

import structlog
from rich.console import Console
from rich.markup import escape

from src.config import Settings, get_settings
from src.core.export import OutputFormat, render
from src.core.numeric import RngStream
from src.skills import ErrorKind, SkillContext, SkillInput, SkillRegistry

EXIT_OK = 0
EXIT_COMPUTATION = 1
EXIT_USAGE = 2

_U64 = 2**64


def _stderr_logger(*args) -> structlog.PrintLogger:
    # 로거를 만들 때마다 현재 sys.stderr 를 찾음 (스트림이 교체돼도 닫힌 파일을 잡지 않음)
    return structlog.PrintLogger(file=sys.stderr)


def configure_logging(settings: Settings) -> None:
    """structlog 설정 (stderr 출력, 결과는 stdout 전용)"""
    level = logging.getLevelName(settings.log_level.value)
    renderer = (
        structlog.processors.JSONRenderer()
        if settings.log_json
        else structlog.dev.ConsoleRenderer(colors=False)
    )
    structlog.configure(
        processors=[
            structlog.contextvars.merge_contextvars,
            structlog.processors.add_log_level,
            structlog.processors.TimeStamper(fmt="iso"),
            renderer,
        ],
        wrapper_class=structlog.make_filtering_bound_logger(level),
        logger_factory=_stderr_logger,
        cache_logger_on_first_use=False,
    )


def _seed(text: str) -> int:
    try:
        value = int(text, 0)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"invalid seed {text!r}") from e
    if not 0 <= value < _U64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    """등록된 스킬 메타데이터로 하위 명령 파서 구성"""
    parser = argparse.ArgumentParser(
        prog="imprior",
        description="Bayes factors and model selection with intrinsic moment priors.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format",
        choices=[fmt.value for fmt in OutputFormat],
        default=OutputFormat.JSON.value,
        help="output format (default: json)",
    )
    common.add_argument(
        "--seed", type=_seed, default=None, help="random seed (default: IMPRIOR_SEED or 0)"
    )

    subparsers = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for meta in SkillRegistry.list_skills():
        sub = subparsers.add_parser(
            meta.command,
            parents=[common],
            help=meta.display_name,
            description=meta.description,
            epilog="examples:\n  " + "\n  ".join(meta.examples) if meta.examples else None,
            formatter_class=argparse.RawDescriptionHelpFormatter,
        )
        for param in meta.parameters:
            flag = "--" + param.name.replace("_", "-")
            if param.type is bool:
                sub.add_argument(
                    flag, dest=param.name, action="store_true", default=None,
                    help=param.description,
                )
                continue
            default = f" (default: {param.default})" if param.default is not None else ""
            sub.add_argument(
                flag,
                dest=param.name,
                type=param.type,
                default=None,
                required=param.required,
                choices=param.choices,
                nargs="+" if param.multiple else None,
                help=param.description + default,
            )
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """하위 명령 실행 후 종료 코드 반환 (0 성공, 2 사용법 오류, 1 계산 오류)"""
    settings = get_settings()
    configure_logging(settings)
    console = Console(stderr=True)

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE

    skill_class = SkillRegistry.get_by_command(args.command)
    skill = skill_class()
    names = {param.name for param in skill.metadata.parameters}
    parameters = {
        key: value for key, value in vars(args).items() if key in names and value is not None
    }
    seed = args.seed if args.seed is not None else settings.seed
    context = SkillContext(seed=RngStream(seed), max_workers=settings.threads)

    output = asyncio.run(skill.run(SkillInput(parameters=parameters, context=context)))
    if not output.success:
        console.print(f"[bold red]error:[/bold red] {escape(output.error or '')}", highlight=False)
        if output.error_kind is ErrorKind.USAGE:
            console.print(f"usage: {parser.prog} {args.command} --help", highlight=False)
            return EXIT_USAGE
        return EXIT_COMPUTATION

    text = render(output.data, args.format)
    sys.stdout.write(text if text.endswith("\n") else text + "\n")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
