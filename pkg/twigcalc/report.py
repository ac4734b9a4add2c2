from __future__ import annotations
import typing
import os
import anytree
import anytree.importer
import twigcalc.constants as constants
import twigcalc.errors as errors
import twigcalc.data_loader as data_loader


class ReportNode(anytree.Node):
    """
    Node of the claim tree. Groups hold claims; a claim names the ``check`` that computes its observed value
    and the ``expected`` value it should produce. After a run every claim carries ``status`` and ``observed``.
    """
    separator = constants.SEPARATOR

    def __init__(self,
                 name: str = None,
                 parent: ReportNode = None,
                 children: typing.Iterable[ReportNode] = None,
                 *,
                 statement: str = None,
                 check: str = None,
                 args: typing.Dict[str, typing.Any] = None,
                 expected: typing.Any = None,
                 assumed: bool = False,
                 status: str = None,
                 observed: typing.Any = None,
                 details: str = None,
                 anchor: typing.Union[None, str, typing.Dict[str, str]] = None, ) -> None:
        super().__init__(name=name, parent=parent, children=children)
        self.statement = statement
        self.check = check
        self.args = dict(args or {})
        self.expected = expected
        self.assumed = bool(assumed)
        self.status = status
        self.observed = observed
        self.details = details
        self.anchor = anchor

    @property
    def is_claim(self) -> bool:
        return self.check is not None

    @property
    def claim_id(self) -> str:
        # Root name is not part of the id: "five-cusps/search"
        return self.separator.join(str(node.name) for node in self.path[1:])

    @property
    def section(self) -> typing.Optional[str]:
        if isinstance(self.anchor, dict):
            return str(self.anchor.get("section"))
        return None

    @property
    def claims(self) -> typing.List[ReportNode]:
        return [node for node in anytree.PreOrderIter(self) if node.is_claim]

    @property
    def group_status(self) -> str:
        statuses = [claim.status for claim in self.claims]
        if constants.FAIL in statuses:
            return constants.FAIL
        if constants.UNKNOWN in statuses or None in statuses:
            return constants.UNKNOWN
        return constants.PASS

    def to_json(self) -> dict:
        return {
            "check_id": self.claim_id,
            "claim": self.statement,
            "status": self.status,
            "expected": self.expected,
            "observed": self.observed,
            "details": self.details,
            "paper_anchor": self.anchor,
        }

    def render(self) -> str:
        lines = []
        for prefix, _, node in anytree.RenderTree(self):
            if node.is_claim:
                line = f"{prefix}{node.name}: {node.status}"
                if node.status == constants.FAIL:
                    line += f" (expected {node.expected!r}, observed {node.observed!r})"
                    if node.details:
                        line += f" {node.details}"
            else:
                line = f"{prefix}{node.name} [{node.group_status}]"
            lines.append(line)
        return "\n".join(lines)


class ClaimLoader:

    @staticmethod
    def load_references() -> typing.Dict[str, dict]:
        data = data_loader.DataLoader.load_resource(constants.REFERENCES_FILE)
        return {str(key): value for key, value in data["sections"].items()}

    @staticmethod
    def check_anchor(claim: ReportNode, source: str) -> None:
        anchor = claim.anchor
        if anchor is None or anchor == constants.PLUMBING:
            return
        if not isinstance(anchor, dict) or set(anchor) != {"section", "quote"} \
                or not all(isinstance(value, (str, int)) for value in anchor.values()):
            raise errors.ParseError(f"Claim '{claim.claim_id}': anchor should be '{constants.PLUMBING}' "
                                    f"or a mapping with 'section' and 'quote', got {anchor!r}", source)

    @staticmethod
    def load_manifest(manifest: typing.Union[None, dict, str, os.PathLike] = None,
                      group: str = None,
                      section: str = None, ) -> ReportNode:
        """
        Claim tree from the bundled ``claims.yaml``, from a file, or from already loaded data.
        ``group`` keeps a single top level group; ``section`` keeps the claims anchored in that section.
        """
        if manifest is None:
            data = data_loader.DataLoader.load_resource(constants.CLAIMS_FILE)
        elif isinstance(manifest, dict):
            data = manifest
        else:
            data = data_loader.DataLoader.load_yaml_file(manifest)
        if not isinstance(data, dict) or "children" not in data:
            raise errors.ParseError("Claim manifest should be a mapping with 'children'", str(manifest))
        data = dict(data)
        data.setdefault("name", "claims")
        if group is not None:
            groups = [child for child in data["children"] if child.get("name") == group]
            if not groups:
                names = [child.get("name") for child in data["children"]]
                raise errors.ParseError(f"Unknown claim group '{group}', expected one of {names}", str(manifest))
            data["children"] = groups
        importer = anytree.importer.DictImporter(ReportNode)
        root = importer.import_(data)
        seen = set()
        for claim in root.claims:
            assert claim.claim_id not in seen, f"Duplicated claim id: {claim.claim_id}"
            seen.add(claim.claim_id)
            ClaimLoader.check_anchor(claim, str(manifest))
        if section is not None:
            section = str(section).lstrip("§")
            sections = sorted(ClaimLoader.load_references())
            if section not in sections:
                raise errors.ParseError(f"Unknown section '{section}', expected one of {sections}", str(manifest))
            for claim in root.claims:
                if claim.section != section:
                    claim.parent = None
            for node in reversed(list(anytree.PreOrderIter(root))):
                if node is not root and not node.is_claim and not node.claims:
                    node.parent = None
        return root
