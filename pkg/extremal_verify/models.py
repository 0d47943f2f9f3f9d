from django.db import models
from django.utils import timezone

from .reports import VERDICT_CHOICES, CheckReport, to_json_value


class VerificationRunManager(models.Manager):

    def record(self, report: CheckReport) -> 'VerificationRun':
        data = report.to_dict()
        return self.create(
            name=report.name,
            verdict=report.verdict,
            hypotheses_met=report.hypotheses_met,
            lhs=str(to_json_value(report.lhs)),
            rhs=str(to_json_value(report.rhs)),
            report=data,
            instance=data['instance'] or {},
        )

    def violations(self):
        return self.filter(verdict='violated')


class VerificationRun(models.Model):
    """A stored CheckReport, replayable from its instance"""
    name = models.CharField(max_length=50)
    verdict = models.CharField(max_length=20, choices=VERDICT_CHOICES)
    hypotheses_met = models.BooleanField(default=True)
    lhs = models.TextField(blank=True)  # exact values as "p/q" text
    rhs = models.TextField(blank=True)
    report = models.JSONField(default=dict, blank=True)
    instance = models.JSONField(default=dict, blank=True)
    created_at = models.DateTimeField(default=timezone.now)

    objects = VerificationRunManager()

    class Meta:
        ordering = ['-created_at']
        indexes = [
            models.Index(fields=['name', 'created_at'], name='extremal_ve_name_4c1e2a_idx'),
            models.Index(fields=['verdict', 'created_at'], name='extremal_ve_verdict_9b7d31_idx'),
        ]

    def __str__(self):
        return f"{self.name}: {self.verdict} ({self.created_at:%Y-%m-%d %H:%M})"
