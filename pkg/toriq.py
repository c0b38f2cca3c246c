"""toriq 命令行入口：校验、约化、图卡、分类、采样与绘图。

退出码：0 成功；1 校验失败或其他库错误；2 迷向判据失败；3 读写或解析错误。
stdout 只输出 JSON（render 输出 SVG），人读信息写到 stderr。
"""

import argparse
import logging
import sys
from pathlib import Path

from core.commands import COMMANDS
from core.errors import DocumentError, InvalidTriple, IsotropyViolation, ToriqError
from utils.document import dumps

EXIT_FAILED = 1
EXIT_ISOTROPY = 2
EXIT_IO = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="toriq", description="非有理凸多面体的辛约化工具")
    parser.add_argument("--verbose", action="store_true", help="打印日志与耗时")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for name, cls in COMMANDS.items():
        sub = subparsers.add_parser(name, help=cls.help, description=cls.__doc__)
        cls.add_arguments(sub)
    return parser


def _emit(payload, out: str | None) -> None:
    text = payload if isinstance(payload, str) else dumps(payload)
    if out is None:
        sys.stdout.write(text)
        return
    Path(out).write_text(text, encoding="utf-8")


def main(argv=None) -> int:
    # 0. 解析命令行参数
    args = build_parser().parse_args(argv)
    if args.verbose:
        logging.basicConfig(level=logging.INFO, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
        print(f"🎯 子命令: {args.command}", file=sys.stderr)

    # 1. 执行子命令，错误映射为退出码
    command = COMMANDS[args.command](verbose=args.verbose)
    try:
        output = command.run(args)
    except DocumentError as e:
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_IO
    except IsotropyViolation as e:
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_ISOTROPY
    except InvalidTriple as e:
        print(f"❌ {e}", file=sys.stderr)
        for issue in e.report.issues:
            print(f"   - [{issue.code}] {issue.message}", file=sys.stderr)
        return EXIT_FAILED
    except ToriqError as e:
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_FAILED

    # 2. 输出结果
    try:
        _emit(output.payload, args.out)
    except OSError as e:
        print(f"❌ cannot write {args.out}: {e.strerror or e}", file=sys.stderr)
        return EXIT_IO
    if output.summary:
        print(output.summary, file=sys.stderr)
    if args.out:
        print(f"💾 结果已保存到: {args.out}", file=sys.stderr)
    return output.exit_code


if __name__ == "__main__":
    raise SystemExit(main())
