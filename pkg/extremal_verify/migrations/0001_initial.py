# Generated by Django 5.2.1 on 2026-10-18 09:12

import django.utils.timezone
from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = [
    ]

    operations = [
        migrations.CreateModel(
            name='VerificationRun',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('name', models.CharField(max_length=50)),
                ('verdict', models.CharField(choices=[('holds', 'Holds'), ('violated', 'Violated'), ('vacuous', 'Vacuous (nonpositive bound)'), ('borderline', 'Borderline (within guard band)'), ('hypotheses_unmet', 'Hypotheses not met')], max_length=20)),
                ('hypotheses_met', models.BooleanField(default=True)),
                ('lhs', models.TextField(blank=True)),
                ('rhs', models.TextField(blank=True)),
                ('report', models.JSONField(blank=True, default=dict)),
                ('instance', models.JSONField(blank=True, default=dict)),
                ('created_at', models.DateTimeField(default=django.utils.timezone.now)),
            ],
            options={
                'ordering': ['-created_at'],
                'indexes': [models.Index(fields=['name', 'created_at'], name='extremal_ve_name_4c1e2a_idx'), models.Index(fields=['verdict', 'created_at'], name='extremal_ve_verdict_9b7d31_idx')],
            },
        ),
    ]
